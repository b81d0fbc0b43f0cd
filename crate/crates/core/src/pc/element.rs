use std::fmt;
use std::ops::Mul;

use super::presentation::PcPresentation;
use crate::abelian::fp;
use crate::error::{Error, Result};

/// An element in normal form `x_1^{a_1} ... x_d^{a_d} u_1^{b_1} ... u_r^{b_r}`.
#[derive(Clone)]
pub struct GroupElement<'a> {
    pres: &'a PcPresentation,
    a: Vec<u32>,
    b: Vec<u32>,
}

impl<'a> GroupElement<'a> {
    pub fn new(pres: &'a PcPresentation, a: Vec<u32>, b: Vec<u32>) -> Result<Self> {
        if a.len() != pres.d() || b.len() != pres.r() {
            return Err(Error::Usage("exponent vectors do not match the presentation".into()));
        }
        let p = pres.p();
        Ok(Self { pres, a: a.into_iter().map(|x| x % p).collect(), b: b.into_iter().map(|x| x % p).collect() })
    }

    pub(crate) fn from_parts(pres: &'a PcPresentation, a: Vec<u32>, b: Vec<u32>) -> Self {
        Self { pres, a, b }
    }

    pub fn identity(pres: &'a PcPresentation) -> Self {
        Self { pres, a: vec![0; pres.d()], b: vec![0; pres.r()] }
    }

    /// Main generator `x_i` (0-based).
    pub fn generator(pres: &'a PcPresentation, i: usize) -> Self {
        let mut g = Self::identity(pres);
        g.a[i] = 1;
        g
    }

    /// Central generator `u_a` (0-based).
    pub fn central(pres: &'a PcPresentation, a: usize) -> Self {
        let mut g = Self::identity(pres);
        g.b[a] = 1;
        g
    }

    /// Purely central element with the given coordinates.
    pub fn from_central(pres: &'a PcPresentation, b: Vec<u32>) -> Self {
        Self { pres, a: vec![0; pres.d()], b }
    }

    pub fn from_index(pres: &'a PcPresentation, idx: u64) -> Self {
        let (a, b) = pres.decode(idx);
        Self { pres, a, b }
    }

    pub fn index(&self) -> u64 {
        self.pres.encode(&self.a, &self.b)
    }

    pub fn presentation(&self) -> &'a PcPresentation {
        self.pres
    }

    pub fn main(&self) -> &[u32] {
        &self.a
    }

    pub fn central_part(&self) -> &[u32] {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        fp::is_zero(&self.a) && fp::is_zero(&self.b)
    }

    pub fn is_central_word(&self) -> bool {
        fp::is_zero(&self.a)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if std::ptr::eq(self.pres, other.pres) || self.pres == other.pres {
            Ok(())
        } else {
            Err(Error::Usage("elements belong to different presentations".into()))
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (a, b) = self.pres.mul_raw(&self.a, &self.b, &other.a, &other.b);
        Ok(Self { pres: self.pres, a, b })
    }

    pub fn inverse(&self) -> Self {
        let (a, b) = self.pres.inverse_raw(&self.a, &self.b);
        Self { pres: self.pres, a, b }
    }

    /// `g^n` for any integer `n`. The exponent of `G` divides `p^2`.
    pub fn power(&self, n: i64) -> Self {
        let pp = (self.pres.p() as i64).pow(2);
        let mut n = n.rem_euclid(pp);
        let mut base = self.clone();
        let mut acc = Self::identity(self.pres);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// `[g, h] = g h g^-1 h^-1`; always central.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_central(self.pres, self.pres.comm_raw(&self.a, &other.a)))
    }

    /// `^g h = g h g^-1 = [g, h] h`.
    pub fn conjugate(&self, h: &Self) -> Result<Self> {
        self.commutator(h)?.multiply(h)
    }
}

impl PartialEq for GroupElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.check(other).is_ok() && self.a == other.a && self.b == other.b
    }
}

impl Eq for GroupElement<'_> {}

impl std::hash::Hash for GroupElement<'_> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

/// Panics on elements of different presentations; use `multiply` to get an error instead.
impl<'a> Mul for &GroupElement<'a> {
    type Output = GroupElement<'a>;

    fn mul(self, rhs: Self) -> GroupElement<'a> {
        self.multiply(rhs).expect("elements of the same presentation")
    }
}

impl fmt::Debug for GroupElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, v) in [("x", &self.a), ("u", &self.b)] {
            for (i, &e) in v.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("{name}{}", i + 1)),
                    _ => parts.push(format!("{name}{}^{e}", i + 1)),
                }
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Iterate all elements in index order.
pub fn elements(pres: &PcPresentation) -> impl Iterator<Item = GroupElement<'_>> {
    let n = pres.order().expect("order fits") as u64;
    (0..n).map(move |i| GroupElement::from_index(pres, i))
}
