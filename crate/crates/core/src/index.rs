//! The index set `I_N`: orbits, primitivity, `H_N^{a,b}` and the choice of
//! motivic elements feeding the regulator matrix.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::{self, CycElt};
use crate::error::{Error, Result};

/// A pair `(a, b)` in `I_N`, stored with representatives in `1..N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FermatIndex {
    n: u32,
    a: u32,
    b: u32,
}

impl fmt::Display for FermatIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.a, self.b)
    }
}

impl FermatIndex {
    pub fn new(n: u32, a: i64, b: i64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidIndex { n, a, b });
        }
        let m = n as i64;
        let (ra, rb) = (a.rem_euclid(m), b.rem_euclid(m));
        if ra == 0 || rb == 0 || (ra + rb) % m == 0 {
            return Err(Error::InvalidIndex { n, a, b });
        }
        Ok(FermatIndex { n, a: ra as u32, b: rb as u32 })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// `c = -a-b`, in `1..N`.
    pub fn c(&self) -> u32 {
        self.angle(-(self.a as i64) - self.b as i64)
    }

    pub fn g(&self) -> usize {
        cyclo::euler_phi(self.n) as usize / 2
    }

    /// The representative `<x>` in `0..N`.
    pub fn angle(&self, x: i64) -> u32 {
        x.rem_euclid(self.n as i64) as u32
    }

    /// `(ha, hb)` as an index at the same level.
    pub fn scaled(&self, h: i64) -> Result<Self> {
        FermatIndex::new(self.n, h * self.a as i64, h * self.b as i64)
    }

    pub fn swapped(&self) -> Self {
        FermatIndex { n: self.n, a: self.b, b: self.a }
    }
}

/// `H_N^{a,b} = { h unit : <ha> + <hb> < N }`, ascending.
pub fn h_set(idx: &FermatIndex) -> Vec<u32> {
    let n = idx.n as u64;
    cyclo::units(idx.n)
        .into_iter()
        .filter(|&h| (h as u64 * idx.a as u64) % n + (h as u64 * idx.b as u64) % n < n)
        .collect()
}

/// The orbit `{(ha, hb)}` under the unit group.
pub fn orbit(idx: &FermatIndex) -> BTreeSet<(u32, u32)> {
    cyclo::units(idx.n)
        .into_iter()
        .map(|h| (idx.angle(h as i64 * idx.a as i64), idx.angle(h as i64 * idx.b as i64)))
        .collect()
}

fn content(idx: &FermatIndex) -> u64 {
    cyclo::gcd(cyclo::gcd(idx.n as u64, idx.a as u64), idx.b as u64)
}

pub fn is_primitive(idx: &FermatIndex) -> bool {
    content(idx) == 1
}

/// `(N, da', db') -> (N/d, a', b')` with `d = gcd(N, a, b)`.
pub fn reduce_nonprimitive(idx: &FermatIndex) -> Result<FermatIndex> {
    let d = content(idx) as u32;
    if d == 1 {
        return Err(Error::AlreadyPrimitive { n: idx.n, a: idx.a, b: idx.b });
    }
    FermatIndex::new(idx.n / d, (idx.a / d) as i64, (idx.b / d) as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ElementKind {
    E,
    EAlpha,
    EBeta,
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementKind::E => "e",
            ElementKind::EAlpha => "e_alpha",
            ElementKind::EBeta => "e_beta",
        })
    }
}

/// For even `N`: `T(zeta^(<hc> + <hx>/2))` where `x = b` for `EAlpha` and `x = a` for `EBeta`.
pub fn even_trace(idx: &FermatIndex, kind: ElementKind, h: u32) -> Result<i64> {
    let hx = match kind {
        ElementKind::EAlpha => idx.angle(h as i64 * idx.b as i64),
        ElementKind::EBeta => idx.angle(h as i64 * idx.a as i64),
        ElementKind::E => return Err(Error::InadmissibleElement { n: idx.n, a: idx.a, b: idx.b, element: "e" }),
    };
    if idx.n % 2 != 0 || hx % 2 != 0 {
        return Err(Error::InadmissibleElement { n: idx.n, a: idx.a, b: idx.b, element: kind_name(kind) });
    }
    let hc = idx.angle(h as i64 * idx.c() as i64);
    let t = CycElt::zeta_pow(idx.n, (hc + hx / 2) as i64).trace();
    Ok(t.numer().to_i64().expect("small trace"))
}

fn kind_name(kind: ElementKind) -> &'static str {
    match kind {
        ElementKind::E => "e",
        ElementKind::EAlpha => "e_alpha",
        ElementKind::EBeta => "e_beta",
    }
}

/// Whether `kind` contributes a row independent of the others by the
/// closed-form criteria; the `E` row is always admissible.
pub fn is_admissible(idx: &FermatIndex, kind: ElementKind) -> bool {
    let (a, b, c) = (idx.a, idx.b, idx.c());
    match (kind, idx.n % 2 == 0) {
        (ElementKind::E, _) => true,
        (ElementKind::EAlpha, false) => a != c,
        (ElementKind::EBeta, false) => b != c,
        (ElementKind::EAlpha, true) => {
            b % 2 == 0 && a != c && h_set(idx).iter().any(|&h| even_trace(idx, kind, h).unwrap() != 0)
        }
        (ElementKind::EBeta, true) => {
            a % 2 == 0 && b != c && h_set(idx).iter().any(|&h| even_trace(idx, kind, h).unwrap() != 0)
        }
    }
}

/// The `g` elements whose regulator rows form the matrix, `E` first.
pub fn element_set(idx: &FermatIndex) -> Result<Vec<ElementKind>> {
    if !is_primitive(idx) {
        return Err(Error::NotPrimitive { n: idx.n, a: idx.a, b: idx.b });
    }
    let g = idx.g();
    let mut out = vec![ElementKind::E];
    if is_admissible(idx, ElementKind::EAlpha) {
        out.push(ElementKind::EAlpha);
    }
    // with a = b the two involutions give the same row
    let beta_dup = idx.a == idx.b && out.contains(&ElementKind::EAlpha);
    if is_admissible(idx, ElementKind::EBeta) && !beta_dup {
        out.push(ElementKind::EBeta);
    }
    if out.len() < g {
        return Err(Error::InsufficientElements { n: idx.n, a: idx.a, b: idx.b, found: out.len(), needed: g });
    }
    out.truncate(g);
    Ok(out)
}
