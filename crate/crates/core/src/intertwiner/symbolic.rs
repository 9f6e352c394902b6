//! Symbolic primary intertwiners.
//!
//! For primary highest-weight vectors `a, b` of weights `h_a, h_b` and a
//! target weight `h_c`, the coefficients `a_{(r)} b` are opaque graded
//! symbols `S(r)` on the exponent tower descending from
//! `m = h_a + h_b - 1 - h_c`, constrained only by the primary commutator
//! rule `[L_j, a_{(r)}] = ((h_a-1)(j+1) - r) a_{(r+j)}` and `L_j b = 0`
//! (`j >= 1`), `L_0 b = h_b b`. The target module is spanned by PBW words
//! over the symbols; the engine never constructs it from an existence
//! theorem — that is the point: identities hold or fail purely by the
//! declared relations.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::intertwiner::realization::Realization;
use crate::intertwiner::virasoro_real::{VirModes, VirTarget};
use crate::lambda::series::Coeff;
use crate::rat::Rat;
use crate::virasoro::partition::Partition;
use crate::virasoro::verma::{VermaVector, VirasoroModule};

/// A vector of the symbolic target module: words applied to mode symbols.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SymVector {
    terms: BTreeMap<(Partition, Rat), Rat>,
}

impl SymVector {
    pub fn zero() -> Self {
        SymVector {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_term(word: Partition, r: Rat, coeff: Rat) -> Self {
        let mut v = Self::zero();
        v.add_term(word, r, coeff);
        v
    }

    pub fn add_term(&mut self, word: Partition, r: Rat, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let key = (word, r);
        let updated = match self.terms.get(&key) {
            Some(old) => old + &coeff,
            None => coeff,
        };
        if updated.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, updated);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Partition, Rat), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Partition, r: &Rat) -> Rat {
        self.terms
            .get(&(word.clone(), r.clone()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

impl Coeff for SymVector {
    fn zero() -> Self {
        SymVector::zero()
    }
    fn is_zero(&self) -> bool {
        SymVector::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for ((w, r), c) in rhs.terms.iter() {
            out.add_term(w.clone(), r.clone(), c.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        let mut out = Self::zero();
        for ((w, r), c) in self.terms.iter() {
            out.add_term(w.clone(), r.clone(), -c.clone());
        }
        out
    }
    fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for ((w, r), c) in self.terms.iter() {
            out.add_term(w.clone(), r.clone(), c * k);
        }
        out
    }
}

/// The symbolic target module data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicThree {
    pub c: Rat,
    pub h_a: Rat,
    pub h_b: Rat,
    pub h_c: Rat,
}

impl SymbolicThree {
    pub fn new(c: Rat, h_a: Rat, h_b: Rat, h_c: Rat) -> Self {
        SymbolicThree { c, h_a, h_b, h_c }
    }

    /// Top mode `m = h_a + h_b - 1 - h_c`.
    pub fn top(&self) -> Rat {
        &(&self.h_a + &self.h_b) - &(&Rat::one() + &self.h_c)
    }

    /// `S(r)` is a valid (possibly nonzero) symbol iff `r` is on the tower
    /// and not above the top.
    pub fn symbol(&self, r: &Rat) -> SymVector {
        let m = self.top();
        if (&m - r).is_nonneg_integer() {
            SymVector::from_term(Partition::empty(), r.clone(), Rat::one())
        } else {
            SymVector::zero()
        }
    }

    /// Grading level of a basis key: word level plus tower depth.
    pub fn key_level(&self, word: &Partition, r: &Rat) -> i64 {
        let depth = (&self.top() - r)
            .to_integer()
            .expect("symbol on the tower");
        word.level() as i64 + depth
    }

    /// `L_n` on the bare symbol `S(r)`:
    /// `n >= 1`: `((h_a-1)(n+1) - r) S(r+n)`, `n = 0`: weight scalar.
    fn l_on_symbol(&self, n: i64, r: &Rat) -> SymVector {
        debug_assert!(n >= 0);
        if n == 0 {
            let wt = &(&(&self.h_a + &self.h_b) - &Rat::one()) - r;
            return self.symbol(r).scale(&wt);
        }
        let factor = &(&(&self.h_a - &Rat::one()) * &Rat::from_int(n + 1)) - r;
        self.symbol(&(r + &Rat::from_int(n))).scale(&factor)
    }

    /// `L_n` on a general vector, by PBW straightening over the symbols.
    pub fn apply_mode(&self, n: i64, v: &SymVector) -> SymVector {
        let mut out = SymVector::zero();
        for ((word, r), coeff) in v.terms.iter() {
            let mut seq = vec![n];
            seq.extend(word.modes());
            self.normalize_into(coeff.clone(), seq, r, &mut out);
        }
        out
    }

    fn normalize_into(&self, coeff: Rat, seq: Vec<i64>, r: &Rat, out: &mut SymVector) {
        let mut work = vec![(coeff, seq)];
        while let Some((coeff, mut seq)) = work.pop() {
            if coeff.is_zero() {
                continue;
            }
            match seq.last().copied() {
                None => {
                    out.add_term(Partition::empty(), r.clone(), coeff);
                    continue;
                }
                Some(n) if n >= 0 => {
                    // the mode reaches the symbol: rewrite through the
                    // primary commutator rule
                    seq.pop();
                    for ((w2, r2), c2) in self.l_on_symbol(n, r).terms() {
                        debug_assert!(w2.is_empty());
                        // continue normalizing the remaining sequence on S(r2)
                        let mut sub = SymVector::zero();
                        self.normalize_into(&coeff * c2, seq.clone(), r2, &mut sub);
                        for ((w3, r3), c3) in sub.terms() {
                            out.add_term(w3.clone(), r3.clone(), c3.clone());
                        }
                    }
                    continue;
                }
                _ => {}
            }
            match (0..seq.len() - 1).rev().find(|&i| seq[i] > seq[i + 1]) {
                None => {
                    let parts: Vec<u32> = seq.iter().map(|&m| (-m) as u32).collect();
                    out.add_term(Partition::new(parts), r.clone(), coeff);
                }
                Some(i) => {
                    let (a, b) = (seq[i], seq[i + 1]);
                    let mut swapped = seq.clone();
                    swapped.swap(i, i + 1);
                    work.push((coeff.clone(), swapped));
                    let mut merged = seq.clone();
                    merged.splice(i..=i + 1, [a + b]);
                    work.push((&coeff * &Rat::from_int(a - b), merged));
                    if a == -b {
                        let central = Rat::new(a * a * a - a, 12);
                        let mut dropped = seq.clone();
                        dropped.splice(i..=i + 1, []);
                        work.push((&coeff * &(&central * &self.c), dropped));
                    }
                }
            }
        }
    }
}

impl VirTarget for SymbolicThree {
    type Vec = SymVector;
    fn l_mode(&self, n: i64, v: &SymVector) -> SymVector {
        self.apply_mode(n, v)
    }
    fn level_of(&self, v: &SymVector) -> i64 {
        v.terms
            .keys()
            .map(|(w, r)| self.key_level(w, r))
            .max()
            .unwrap_or(0)
    }
}

/// Realization (symbolic primary intertwiner): Verma modules over `h_a`
/// and `h_b` mapping into the symbolic target.
pub struct SymbolicIntertwiner {
    pub vacuum: VirasoroModule,
    pub m1: VirasoroModule,
    pub m2: VirasoroModule,
    pub sym: SymbolicThree,
    on_vacuum: VirModes<VirasoroModule>,
    on_m1: VirModes<VirasoroModule>,
    on_m2: VirModes<VirasoroModule>,
    on_sym: VirModes<SymbolicThree>,
    prim_cache: RefCell<BTreeMap<(Rat, VermaVector), SymVector>>,
    mode_cache: RefCell<BTreeMap<(Vec<u32>, Rat, VermaVector), SymVector>>,
}

impl SymbolicIntertwiner {
    pub fn new(c: Rat, h_a: Rat, h_b: Rat, h_c: Rat) -> Self {
        let vacuum = VirasoroModule::vacuum(c.clone());
        let m1 = VirasoroModule::verma(c.clone(), h_a.clone());
        let m2 = VirasoroModule::verma(c.clone(), h_b.clone());
        let sym = SymbolicThree::new(c, h_a, h_b, h_c);
        SymbolicIntertwiner {
            on_vacuum: VirModes::new(vacuum.clone()),
            on_m1: VirModes::new(m1.clone()),
            on_m2: VirModes::new(m2.clone()),
            on_sym: VirModes::new(sym.clone()),
            vacuum,
            m1,
            m2,
            sym,
            prim_cache: RefCell::new(BTreeMap::new()),
            mode_cache: RefCell::new(BTreeMap::new()),
        }
    }

    /// Top mode of the basic tower.
    pub fn m_top(&self) -> Rat {
        self.sym.top()
    }

    pub fn a_vector(&self) -> VermaVector {
        self.m1.highest_weight_vector()
    }

    pub fn b_vector(&self) -> VermaVector {
        self.m2.highest_weight_vector()
    }

    /// `a_{(k)} y` for the primary `a` itself, by commuting `a_{(k)}` through
    /// the PBW word of `y`:
    /// `a_{(k)} L_{-n} y' = L_{-n} (a_{(k)} y') - ((h_a-1)(1-n) - k) a_{(k-n)} y'`.
    fn primary_mode(&self, k: &Rat, y: &VermaVector) -> SymVector {
        let key = (k.clone(), y.clone());
        if let Some(hit) = self.prim_cache.borrow().get(&key) {
            return hit.clone();
        }
        let mut acc = SymVector::zero();
        for (word, coeff) in y.terms() {
            acc = acc.add(&self.primary_mode_word(k, word.parts()).scale(coeff));
        }
        self.prim_cache.borrow_mut().insert(key, acc.clone());
        acc
    }

    fn primary_mode_word(&self, k: &Rat, word: &[u32]) -> SymVector {
        let Some(&n1) = word.first() else {
            return self.sym.symbol(k);
        };
        let rest = VermaVector::from_term(Partition::new(word[1..].to_vec()), Rat::one());
        let through = self
            .sym
            .apply_mode(-(n1 as i64), &self.primary_mode(k, &rest));
        let j = -(n1 as i64);
        let factor = &(&(&self.h_a() - &Rat::one()) * &Rat::from_int(j + 1)) - k;
        let lowered = self
            .primary_mode(&(k - &Rat::from_int(n1 as i64)), &rest)
            .scale(&factor);
        through.add(&lowered.neg())
    }

    fn h_a(&self) -> Rat {
        self.sym.h_a.clone()
    }

    /// `x_{(m)}` for `x = T^(j-2) L` acting on the symbolic module.
    fn shifted_l_mode_sym(&self, j: u32, m: i64, w: &SymVector) -> SymVector {
        debug_assert!(j >= 2);
        let k = j - 2;
        let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
        let coeff = &sign * &crate::rat::binomial(&Rat::from_int(m), k);
        if coeff.is_zero() {
            return SymVector::zero();
        }
        self.sym.apply_mode(m - k as i64 - 1, w).scale(&coeff)
    }

    fn shifted_l_mode_m2(&self, j: u32, m: i64, w: &VermaVector) -> VermaVector {
        debug_assert!(j >= 2);
        let k = j - 2;
        let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
        let coeff = &sign * &crate::rat::binomial(&Rat::from_int(m), k);
        if coeff.is_zero() {
            return VermaVector::zero();
        }
        self.m2.apply_mode(m - k as i64 - 1, w).scale(&coeff)
    }

    /// `x_{(k)} y` for a descendant word `x` of the primary `a`, by the
    /// product-mode expansion; the base of the recursion is `primary_mode`.
    fn descendant_mode_word(&self, word: &[u32], k: &Rat, y: &VermaVector) -> SymVector {
        if y.is_zero() {
            return SymVector::zero();
        }
        let key = (word.to_vec(), k.clone(), y.clone());
        if let Some(hit) = self.mode_cache.borrow().get(&key) {
            return hit.clone();
        }
        let result = self.descendant_mode_word_uncached(word, k, y);
        self.mode_cache
            .borrow_mut()
            .insert(key, result.clone());
        result
    }

    fn descendant_mode_word_uncached(&self, word: &[u32], k: &Rat, y: &VermaVector) -> SymVector {
        let Some(&j1) = word.first() else {
            return self.primary_mode(k, y);
        };
        let rest = &word[1..];
        if j1 == 1 {
            // (T a')_{(k)} = -k a'_{(k-1)}
            return self
                .descendant_mode_word(rest, &(k - &Rat::one()), y)
                .scale(&-k.clone());
        }
        let rest_lev: i64 = rest.iter().map(|&p| p as i64).sum();
        let y_lev = y.max_level() as i64;
        let mut acc = SymVector::zero();
        // rest modes vanish above the tower bound
        let top_rest = &self.m_top() + &Rat::from_int(rest_lev + y_lev);
        let mut i = 0i64;
        loop {
            let mode = k + &Rat::from_int(i);
            if mode > top_rest {
                break;
            }
            let inner = self.descendant_mode_word(rest, &mode, y);
            if !inner.is_zero() {
                acc = acc.add(&self.shifted_l_mode_sym(j1, -1 - i, &inner));
            }
            i += 1;
        }
        let i_max = y_lev + j1 as i64 - 1;
        let mut i = 0i64;
        while i <= i_max {
            let inner = self.shifted_l_mode_m2(j1, i, y);
            if !inner.is_zero() {
                let mode = &(k - &Rat::one()) - &Rat::from_int(i);
                acc = acc.add(&self.descendant_mode_word(rest, &mode, &inner));
            }
            i += 1;
        }
        acc
    }
}

impl Realization for SymbolicIntertwiner {
    type Alg = VermaVector;
    type M1 = VermaVector;
    type M2 = VermaVector;
    type M3 = SymVector;

    fn t_alg(&self, v: &VermaVector) -> VermaVector {
        self.vacuum.translate(v)
    }
    fn t_m1(&self, a: &VermaVector) -> VermaVector {
        self.m1.translate(a)
    }
    fn t_m2(&self, b: &VermaVector) -> VermaVector {
        self.m2.translate(b)
    }
    fn t_m3(&self, u: &SymVector) -> SymVector {
        self.sym.apply_mode(-1, u)
    }

    fn alg_mode_alg(&self, v: &VermaVector, n: i64, x: &VermaVector) -> VermaVector {
        self.on_vacuum.mode(v, n, x)
    }
    fn alg_mode_m1(&self, v: &VermaVector, n: i64, x: &VermaVector) -> VermaVector {
        self.on_m1.mode(v, n, x)
    }
    fn alg_mode_m2(&self, v: &VermaVector, n: i64, x: &VermaVector) -> VermaVector {
        self.on_m2.mode(v, n, x)
    }
    fn alg_mode_m3(&self, v: &VermaVector, n: i64, x: &SymVector) -> SymVector {
        self.on_sym.mode(v, n, x)
    }

    fn int_mode(&self, a: &VermaVector, k: &Rat, y: &VermaVector) -> SymVector {
        // off-tower modes vanish
        let rel = &(&self.m_top() + &Rat::from_int(a.max_level() as i64)) - k;
        if !rel.is_integer() {
            return SymVector::zero();
        }
        let mut acc = SymVector::zero();
        for (word, coeff) in a.terms() {
            acc = acc.add(&self.descendant_mode_word(word.parts(), k, y).scale(coeff));
        }
        acc
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
    fn lev_m3(&self, u: &SymVector) -> i64 {
        self.sym.level_of(u)
    }

    fn top_mode(&self) -> Rat {
        self.m_top()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intertwiner::realization::{int_bracket, int_top};

    fn ising_sigma_sigma() -> SymbolicIntertwiner {
        // a = b = σ (h = 1/16), target the vacuum sector h_c = 0: m = -7/8
        SymbolicIntertwiner::new(Rat::new(1, 2), Rat::new(1, 16), Rat::new(1, 16), Rat::zero())
    }

    #[test]
    fn top_symbol_is_primary() {
        let r = ising_sigma_sigma();
        let m = r.m_top();
        assert_eq!(m, Rat::new(-7, 8));
        let s = r.sym.symbol(&m);
        // L_1 S(m) = 0, L_2 S(m) = 0, L_0 S(m) = h_c S(m)
        assert!(r.sym.apply_mode(1, &s).is_zero());
        assert!(r.sym.apply_mode(2, &s).is_zero());
        assert_eq!(r.sym.apply_mode(0, &s), s.scale(&r.sym.h_c));
    }

    #[test]
    fn deeper_symbols_are_descendant_like() {
        let r = ising_sigma_sigma();
        let m = r.m_top();
        let deep = r.sym.symbol(&(&m - &Rat::from_int(2)));
        // L_1 S(m-2) = ((h_a-1)·2 - (m-2)) S(m-1)
        let expect = &(&(&(r.sym.h_a.clone()) - &Rat::one()) * &Rat::from_int(2))
            - &(&m - &Rat::from_int(2));
        assert_eq!(
            r.sym.apply_mode(1, &deep),
            r.sym.symbol(&(&m - &Rat::one())).scale(&expect)
        );
    }

    #[test]
    fn symbol_above_top_vanishes() {
        let r = ising_sigma_sigma();
        let above = &r.m_top() + &Rat::one();
        assert!(r.sym.symbol(&above).is_zero());
        // off-tower exponents vanish too
        assert!(r.sym.symbol(&Rat::new(1, 3)).is_zero());
    }

    #[test]
    fn bracket_of_primaries_has_the_declared_tower() {
        let r = ising_sigma_sigma();
        let (a, b) = (r.a_vector(), r.b_vector());
        assert_eq!(int_top(&r, &a, &b), Rat::new(-7, 8));
        let s = int_bracket(&r, &a, &b, 3);
        assert_eq!(s.num_terms(), 4);
        for (e, c) in s.terms() {
            assert_eq!(*c, r.sym.symbol(e));
        }
        assert!(s.truncated());
    }

    #[test]
    fn mode_on_descendant_of_b() {
        // a_{(m+1)}(T b) = (m+1) S(m): the tower extends one step up on
        // descendants
        let r = ising_sigma_sigma();
        let (a, b) = (r.a_vector(), r.b_vector());
        let m = r.m_top();
        let tb = r.t_m2(&b);
        let up = &m + &Rat::one();
        let got = r.int_mode(&a, &up, &tb);
        assert_eq!(got, r.sym.symbol(&m).scale(&up));
    }

    #[test]
    fn translation_covariance_of_symbol_modes() {
        // (T a)_{(k)} b = -k a_{(k-1)} b
        let r = ising_sigma_sigma();
        let (a, b) = (r.a_vector(), r.b_vector());
        let ta = r.t_m1(&a);
        let k = &r.m_top() - &Rat::from_int(1);
        assert_eq!(
            r.int_mode(&ta, &k, &b),
            r.int_mode(&a, &(&k - &Rat::one()), &b).scale(&-k.clone())
        );
    }
}
