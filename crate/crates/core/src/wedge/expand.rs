//! Rewriting `g□h` into letter symbols.
//!
//! With `g = y_1 ⋯ y_n` in normal form and `w_k = y_1 ⋯ y_{k-1}`, repeated use
//! of `gg′□h = (ᵍg′□ᵍh)(g□h)` gives `g□h = Σ_k ^{w_k}y_k □ ^{w_k}h`. Each
//! `^{w}y = [w,y]·y` with `[w,y]` central, and `c·y□h′ = c□h′ + y□h′` for
//! central `c`. A letter against an element is peeled from the left with
//! `ℓ□zX = ℓ□z + ^zℓ□^zX`. Every step is an instance of a defining relation,
//! so the result is a representative of `g□h`.

use std::collections::HashMap;
use std::rc::Rc;

use super::symbols::{FormalSum, Mode, SymbolSet};
use crate::abelian::fp;
use crate::pc::{GroupElement, PcPresentation};

pub struct Expander<'a> {
    pres: &'a PcPresentation,
    symbols: SymbolSet,
    tensor: SymbolSet,
    memo: HashMap<(usize, u64), Rc<Vec<i64>>>,
}

impl<'a> Expander<'a> {
    pub fn new(pres: &'a PcPresentation, mode: Mode) -> Self {
        Self {
            pres,
            symbols: SymbolSet::new(mode, pres.d(), pres.r()),
            tensor: SymbolSet::new(Mode::Tensor, pres.d(), pres.r()),
            memo: HashMap::new(),
        }
    }

    pub fn symbols(&self) -> SymbolSet {
        self.symbols
    }

    pub fn presentation(&self) -> &'a PcPresentation {
        self.pres
    }

    fn unit(&self, i: usize) -> Vec<u32> {
        let mut e = vec![0u32; self.pres.d()];
        e[i] = 1;
        e
    }

    fn add_into(out: &mut [i64], src: &[i64], c: i64) {
        for (o, &s) in out.iter_mut().zip(src) {
            *o += c * s;
        }
    }

    /// Tensor coordinates of `ℓ⊗h` for the letter `ℓ` (x's then u's).
    fn letter_times(&mut self, l: usize, a: &[u32], b: &[u32]) -> Rc<Vec<i64>> {
        let key = (l, self.pres.encode(a, b));
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (d, p) = (self.pres.d(), self.pres.p());
        let mut out = vec![0i64; self.tensor.tensor_dim()];
        if let Some(i) = a.iter().position(|&x| x != 0) {
            let ex = self.unit(i);
            let mut rest_a = a.to_vec();
            rest_a[i] -= 1;
            // ^z of the remainder: main part unchanged, central part shifted
            let mut rest_b = b.to_vec();
            fp::axpy(&mut rest_b, 1, &self.pres.comm_raw(&ex, &rest_a), p);
            out[self.tensor.letter_pair(l, i)] += 1;
            let tail = self.letter_times(l, &rest_a, &rest_b);
            Self::add_into(&mut out, &tail, 1);
            if l < d {
                let c = self.pres.comm_raw(&ex, &self.unit(l));
                for (ua, &ca) in c.iter().enumerate() {
                    if ca != 0 {
                        let tail = self.letter_times(d + ua, &rest_a, &rest_b);
                        Self::add_into(&mut out, &tail, ca as i64);
                    }
                }
            }
        } else if let Some(j) = b.iter().position(|&x| x != 0) {
            let mut rest_b = b.to_vec();
            rest_b[j] -= 1;
            out[self.tensor.letter_pair(l, d + j)] += 1;
            let tail = self.letter_times(l, a, &rest_b);
            Self::add_into(&mut out, &tail, 1);
        }
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        out
    }

    /// Tensor coordinates of `g⊗h` from raw normal forms.
    pub fn tensor_raw(&mut self, ga: &[u32], gb: &[u32], ha: &[u32], hb: &[u32]) -> Vec<i64> {
        let (d, p) = (self.pres.d(), self.pres.p());
        let mut out = vec![0i64; self.tensor.tensor_dim()];
        let mut w = vec![0u32; d];
        for i in 0..d {
            let ex = self.unit(i);
            for _ in 0..ga[i] {
                let c = self.pres.comm_raw(&w, &ex);
                let mut hb2 = hb.to_vec();
                fp::axpy(&mut hb2, 1, &self.pres.comm_raw(&w, ha), p);
                let main = self.letter_times(i, ha, &hb2);
                Self::add_into(&mut out, &main, 1);
                for (ua, &ca) in c.iter().enumerate() {
                    if ca != 0 {
                        let v = self.letter_times(d + ua, ha, &hb2);
                        Self::add_into(&mut out, &v, ca as i64);
                    }
                }
                w[i] += 1;
            }
        }
        let mut hb2 = hb.to_vec();
        fp::axpy(&mut hb2, 1, &self.pres.comm_raw(&w, ha), p);
        for (ua, &n) in gb.iter().enumerate() {
            if n != 0 {
                let v = self.letter_times(d + ua, ha, &hb2);
                Self::add_into(&mut out, &v, n as i64);
            }
        }
        out
    }

    /// Coordinates of `g□h` in this expander's symbol set.
    pub fn raw(&mut self, ga: &[u32], gb: &[u32], ha: &[u32], hb: &[u32]) -> Vec<i64> {
        let t = self.tensor_raw(ga, gb, ha, hb);
        self.symbols.fold(&t)
    }

    pub fn expand(&mut self, g: &GroupElement<'_>, h: &GroupElement<'_>) -> FormalSum {
        let coeffs = self.raw(g.main(), g.central_part(), h.main(), h.central_part());
        FormalSum { symbols: self.symbols, coeffs }
    }

    fn commutator_times(&mut self, i: usize, j: usize, k: usize, swap: bool) -> FormalSum {
        let pres = self.pres;
        let c = GroupElement::from_central(pres, pres.comm(i, j));
        let x = GroupElement::generator(pres, k);
        if swap {
            self.expand(&x, &c)
        } else {
            self.expand(&c, &x)
        }
    }

    /// `[x,y]□z + [z,x]□y + x□[z,y]` on main generators; zero in the square.
    pub fn cyclic_identity(&mut self, x: usize, y: usize, z: usize) -> FormalSum {
        let a = self.commutator_times(x, y, z, false);
        let b = self.commutator_times(z, x, y, false);
        let c = self.commutator_times(z, y, x, true);
        a.add(&b).add(&c)
    }

    /// `[x,y]□z + [z,y]□x + x□[z,y]`. The last two terms cancel in the
    /// exterior square, so this is just `[x,y]∧z` and is nonzero in general.
    pub fn swapped_identity(&mut self, x: usize, y: usize, z: usize) -> FormalSum {
        let a = self.commutator_times(x, y, z, false);
        let b = self.commutator_times(z, y, x, false);
        let c = self.commutator_times(z, y, x, true);
        a.add(&b).add(&c)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::families::free_special;

    #[test]
    fn trivial_expansions() {
        let pres = free_special(3, 3).unwrap();
        let mut e = Expander::new(&pres, Mode::Tensor);
        let one = GroupElement::identity(&pres);
        let x1 = GroupElement::generator(&pres, 0);
        let x2 = GroupElement::generator(&pres, 1);
        assert!(e.expand(&one, &x2).is_empty());
        assert!(e.expand(&x2, &one).is_empty());
        assert_eq!(e.expand(&x1, &x2).terms(), vec![("x1*x2".to_string(), 1)]);
        let mut w = Expander::new(&pres, Mode::Exterior);
        assert_eq!(w.expand(&x2, &x1).terms(), vec![("x1^x2".to_string(), -1)]);
    }
}
