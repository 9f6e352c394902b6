//! Virasoro realizations of the bracket calculus.
//!
//! Modes of vacuum vectors (elements of the universal Virasoro vertex
//! algebra) act on any target carrying an `L_n` action by peeling the
//! leftmost generator through the product-mode expansion
//! `(x_{(-1)} a)_{(m)} = Σ_i [x_{(-1-i)} a_{(m+i)} + a_{(-1+m-i)} x_{(i)}]`
//! with `x = T^(j-2) L`, whose modes are rescaled `L` modes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt::Debug;

use crate::intertwiner::realization::Realization;
use crate::lambda::series::Coeff;
use crate::rat::{binomial, Rat};
use crate::virasoro::partition::Partition;
use crate::virasoro::verma::{VermaVector, VirasoroModule};

/// Anything the Virasoro algebra acts on with a graded `L_n` action.
pub trait VirTarget {
    type Vec: Coeff + Debug + Ord + Clone;
    fn l_mode(&self, n: i64, v: &Self::Vec) -> Self::Vec;
    /// Maximal grading level present (0 for floor vectors).
    fn level_of(&self, v: &Self::Vec) -> i64;
}

impl VirTarget for VirasoroModule {
    type Vec = VermaVector;
    fn l_mode(&self, n: i64, v: &VermaVector) -> VermaVector {
        self.apply_mode(n, v)
    }
    fn level_of(&self, v: &VermaVector) -> i64 {
        v.max_level() as i64
    }
}

/// Mode computer for vacuum words on a target, with memoization on
/// `(word, mode, target vector)`.
pub struct VirModes<T: VirTarget> {
    pub target: T,
    cache: RefCell<BTreeMap<(Vec<u32>, i64, T::Vec), T::Vec>>,
}

impl<T: VirTarget> VirModes<T> {
    pub fn new(target: T) -> Self {
        VirModes {
            target,
            cache: RefCell::new(BTreeMap::new()),
        }
    }

    /// `(T^(j-2) L)_{(m)} = (-1)^j binom(m, j-2) L_{(m-j+2)}` with
    /// `L_{(n)} = L_{n-1}`.
    fn shifted_l_mode(&self, j: u32, m: i64, w: &T::Vec) -> T::Vec {
        debug_assert!(j >= 2);
        let k = j - 2;
        let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
        let coeff = &sign * &binomial(&Rat::from_int(m), k);
        if coeff.is_zero() {
            return T::Vec::zero();
        }
        self.target.l_mode(m - k as i64 - 1, w).scale(&coeff)
    }

    /// `a_{(m)} w` for a single vacuum basis word (parts >= 2).
    pub fn word_mode(&self, word: &[u32], m: i64, w: &T::Vec) -> T::Vec {
        if w.is_zero() {
            return T::Vec::zero();
        }
        let key = (word.to_vec(), m, w.clone());
        if let Some(hit) = self.cache.borrow().get(&key) {
            return hit.clone();
        }
        let result = self.word_mode_uncached(word, m, w);
        self.cache.borrow_mut().insert(key, result.clone());
        result
    }

    fn word_mode_uncached(&self, word: &[u32], m: i64, w: &T::Vec) -> T::Vec {
        let Some(&j1) = word.first() else {
            return if m == -1 { w.clone() } else { T::Vec::zero() };
        };
        let rest = &word[1..];
        let rest_lev: i64 = rest.iter().map(|&p| p as i64).sum();
        let w_lev = self.target.level_of(w);
        let mut acc = T::Vec::zero();
        // Σ_i x_{(-1-i)} (rest_{(m+i)} w)
        let i_max = rest_lev + w_lev - 1 - m;
        let mut i = 0i64;
        while i <= i_max {
            let inner = self.word_mode(rest, m + i, w);
            if !inner.is_zero() {
                acc = acc.add(&self.shifted_l_mode(j1, -1 - i, &inner));
            }
            i += 1;
        }
        // Σ_i rest_{(-1+m-i)} (x_{(i)} w)
        let i_max = w_lev + j1 as i64 - 1;
        let mut i = 0i64;
        while i <= i_max {
            let inner = self.shifted_l_mode(j1, i, w);
            if !inner.is_zero() {
                acc = acc.add(&self.word_mode(rest, -1 + m - i, &inner));
            }
            i += 1;
        }
        acc
    }

    /// `a_{(m)} w` for a general vacuum vector.
    pub fn mode(&self, a: &VermaVector, m: i64, w: &T::Vec) -> T::Vec {
        let mut acc = T::Vec::zero();
        for (word, coeff) in a.terms() {
            let part = self.word_mode(word.parts(), m, w);
            acc = acc.add(&part.scale(coeff));
        }
        acc
    }
}

/// Realization (module intertwiner): the universal Virasoro vertex algebra
/// acting on a Verma module, the intertwiner being the module map itself,
/// so `Alg = M1` (vacuum vectors) and `M2 = M3` (module vectors).
pub struct VirasoroSelfIntertwiner {
    pub vacuum: VirasoroModule,
    pub module: VirasoroModule,
    on_vacuum: VirModes<VirasoroModule>,
    on_module: VirModes<VirasoroModule>,
}

impl VirasoroSelfIntertwiner {
    pub fn new(c: Rat, h: Rat) -> Self {
        let vacuum = VirasoroModule::vacuum(c.clone());
        let module = VirasoroModule::verma(c, h);
        VirasoroSelfIntertwiner {
            on_vacuum: VirModes::new(vacuum.clone()),
            on_module: VirModes::new(module.clone()),
            vacuum,
            module,
        }
    }

    /// `L = L_{-2}|0>`, the conformal vector.
    pub fn conformal_vector(&self) -> VermaVector {
        VermaVector::from_term(Partition::new(alloc::vec![2]), Rat::one())
    }
}

impl Realization for VirasoroSelfIntertwiner {
    type Alg = VermaVector;
    type M1 = VermaVector;
    type M2 = VermaVector;
    type M3 = VermaVector;

    fn t_alg(&self, v: &VermaVector) -> VermaVector {
        self.vacuum.translate(v)
    }
    fn t_m1(&self, a: &VermaVector) -> VermaVector {
        self.vacuum.translate(a)
    }
    fn t_m2(&self, b: &VermaVector) -> VermaVector {
        self.module.translate(b)
    }
    fn t_m3(&self, u: &VermaVector) -> VermaVector {
        self.module.translate(u)
    }

    fn alg_mode_alg(&self, v: &VermaVector, n: i64, x: &VermaVector) -> VermaVector {
        self.on_vacuum.mode(v, n, x)
    }
    fn alg_mode_m1(&self, v: &VermaVector, n: i64, x: &VermaVector) -> VermaVector {
        self.on_vacuum.mode(v, n, x)
    }
    fn alg_mode_m2(&self, v: &VermaVector, n: i64, x: &VermaVector) -> VermaVector {
        self.on_module.mode(v, n, x)
    }
    fn alg_mode_m3(&self, v: &VermaVector, n: i64, x: &VermaVector) -> VermaVector {
        self.on_module.mode(v, n, x)
    }

    fn int_mode(&self, a: &VermaVector, k: &Rat, y: &VermaVector) -> VermaVector {
        match k.to_integer() {
            Some(ki) => self.on_module.mode(a, ki, y),
            None => VermaVector::zero(),
        }
    }

    fn lev_alg(&self, v: &VermaVector) -> i64 {
        v.max_level() as i64
    }
    fn lev_m1(&self, a: &VermaVector) -> i64 {
        a.max_level() as i64
    }
    fn lev_m2(&self, b: &VermaVector) -> i64 {
        b.max_level() as i64
    }
    fn lev_m3(&self, u: &VermaVector) -> i64 {
        u.max_level() as i64
    }

    fn top_mode(&self) -> Rat {
        Rat::from_int(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intertwiner::realization::{alg_bracket_alg, int_bracket};
    use crate::lambda::series::LambdaSeries;

    #[test]
    fn conformal_vector_self_bracket() {
        // [L_λ L] = (T L) + 2 L λ + (c/2) |0> λ^(3)
        let r = VirasoroSelfIntertwiner::new(Rat::new(1, 2), Rat::new(1, 16));
        let l = r.conformal_vector();
        let bracket = alg_bracket_alg(&r, &l, &l);
        let mut expect = LambdaSeries::zero();
        expect.add_term(Rat::zero(), r.t_alg(&l));
        expect.add_term(Rat::one(), l.scale(&Rat::from_int(2)));
        expect.add_term(
            Rat::from_int(3),
            r.vacuum
                .highest_weight_vector()
                .scale(&(&r.vacuum.c / &Rat::from_int(2))),
        );
        assert!(bracket.agrees_with(&expect));
    }

    #[test]
    fn module_bracket_of_l_gives_ln_action() {
        // [L_λ w] = Σ λ^(n) L_{n-1} w
        let r = VirasoroSelfIntertwiner::new(Rat::new(7, 10), Rat::new(3, 80));
        let l = r.conformal_vector();
        let w = VermaVector::from_term(Partition::new(alloc::vec![2, 1]), Rat::one());
        let bracket = int_bracket(&r, &l, &w, 0);
        for (n, c) in bracket.terms() {
            let ni = n.to_integer().unwrap();
            assert_eq!(*c, r.module.apply_mode(ni - 1, &w), "mode {ni}");
        }
        // depth of the series: L_{(n)} w = 0 past level+1
        assert!(bracket
            .leading_exponent()
            .is_some_and(|e| *e == Rat::from_int(4)));
    }

    #[test]
    fn vacuum_identity_element() {
        // |0>_{(-1)} is the identity, all other modes vanish
        let r = VirasoroSelfIntertwiner::new(Rat::one(), Rat::new(1, 3));
        let vac = r.vacuum.highest_weight_vector();
        let w = VermaVector::from_term(Partition::new(alloc::vec![3, 1]), Rat::new(2, 7));
        assert_eq!(r.int_mode(&vac, &Rat::from_int(-1), &w), w);
        assert!(r.int_mode(&vac, &Rat::zero(), &w).is_zero());
        assert!(r.int_mode(&vac, &Rat::from_int(-2), &w).is_zero());
    }

    #[test]
    fn product_reconstructs_pbw_words() {
        // (L_{-2}|0>) · w = L_{-2} w and (L_{-3}|0>) · w = L_{-3} w
        let r = VirasoroSelfIntertwiner::new(Rat::new(-22, 5), Rat::zero());
        let w = VermaVector::from_term(Partition::new(alloc::vec![1]), Rat::one());
        let l = r.conformal_vector();
        assert_eq!(
            r.int_mode(&l, &Rat::from_int(-1), &w),
            r.module.apply_mode(-2, &w)
        );
        let l3 = VermaVector::from_term(Partition::new(alloc::vec![3]), Rat::one());
        assert_eq!(
            r.int_mode(&l3, &Rat::from_int(-1), &w),
            r.module.apply_mode(-3, &w)
        );
        // the normally ordered square picks up contraction terms:
        // (L_{-2}L_{-2}|0>) · b = L_{-2}^2 b + 2 L_{-3}L_{-1} b + 2h L_{-4} b
        let ll = VermaVector::from_term(Partition::new(alloc::vec![2, 2]), Rat::one());
        let b = r.module.highest_weight_vector();
        let h = r.module.highest_weight();
        let mut expect = r.module.apply_word(&[-2, -2], &b);
        expect = expect.add(&r.module.apply_word(&[-3, -1], &b).scale(&Rat::from_int(2)));
        expect = expect.add(
            &r.module
                .apply_mode(-4, &b)
                .scale(&(&Rat::from_int(2) * &h)),
        );
        assert_eq!(r.int_mode(&ll, &Rat::from_int(-1), &b), expect);
    }
}
