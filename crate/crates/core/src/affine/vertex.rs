//! The universal affine vertex algebra at level `k` and its Weyl modules,
//! with exact PBW straightening and mode actions.
//!
//! Vectors are linear combinations of words `(x_{b1} t^{-n1}) ⋯ (x_{bl} t^{-nl})`
//! applied to the floor (the vacuum, or a basis vector of the degree-zero
//! layer `E` of a Weyl module). Words are normal-ordered with larger `t`
//! drops leftmost, ties by basis index.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::affine::algebra::LieAlgebraData;
use crate::affine::irrep::IrrepData;
use crate::lambda::series::Coeff;
use crate::rat::{binomial, Rat};

/// A normal-ordered creation word: pairs `(n, b)` for `x_b t^{-n}`, `n >= 1`,
/// sorted descending in `n` and ascending in `b` on ties.
pub type AffWord = Vec<(u32, usize)>;

/// Basis key: creation word applied to floor vector `floor` (always 0 on
/// the vacuum).
pub type AffKey = (AffWord, usize);

#[derive(Clone, Debug, PartialEq)]
pub enum AffKind {
    Vacuum,
    Weyl(IrrepData),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AffineModule {
    pub algebra: LieAlgebraData,
    pub level: Rat,
    pub kind: AffKind,
}

impl AffineModule {
    pub fn vacuum(algebra: LieAlgebraData, level: Rat) -> Self {
        AffineModule {
            algebra,
            level,
            kind: AffKind::Vacuum,
        }
    }

    pub fn weyl(algebra: LieAlgebraData, level: Rat, irrep: IrrepData) -> Self {
        AffineModule {
            algebra,
            level,
            kind: AffKind::Weyl(irrep),
        }
    }

    pub fn floor_dim(&self) -> usize {
        match &self.kind {
            AffKind::Vacuum => 1,
            AffKind::Weyl(e) => e.dim,
        }
    }

    pub fn vacuum_vector(&self) -> AffVector {
        AffVector::from_term((Vec::new(), 0), Rat::one())
    }

    pub fn floor_vector(&self, idx: usize) -> AffVector {
        assert!(idx < self.floor_dim());
        AffVector::from_term((Vec::new(), idx), Rat::one())
    }

    /// Apply the generator `x_b t^r` (any integer `r`).
    pub fn apply_gen(&self, r: i64, b: usize, v: &AffVector) -> AffVector {
        let mut out = AffVector::zero();
        for ((word, floor), coeff) in v.terms.iter() {
            let mut seq: Vec<(i64, usize)> = vec![(r, b)];
            seq.extend(word.iter().map(|&(n, bb)| (-(n as i64), bb)));
            self.normalize_into(coeff.clone(), seq, *floor, &mut out);
        }
        out
    }

    fn floor_apply(&self, b: usize, floor: usize) -> Vec<(usize, Rat)> {
        match &self.kind {
            AffKind::Vacuum => Vec::new(),
            AffKind::Weyl(e) => (0..e.dim)
                .filter_map(|t| {
                    let c = e.matrices[b].at(t, floor);
                    if c.is_zero() {
                        None
                    } else {
                        Some((t, c.clone()))
                    }
                })
                .collect(),
        }
    }

    fn normalize_into(&self, coeff: Rat, seq: Vec<(i64, usize)>, floor: usize, out: &mut AffVector) {
        let mut work = vec![(coeff, seq, floor)];
        while let Some((coeff, mut seq, floor)) = work.pop() {
            if coeff.is_zero() {
                continue;
            }
            match seq.last().copied() {
                None => {
                    out.add_term((Vec::new(), floor), coeff);
                    continue;
                }
                Some((r, _)) if r > 0 => continue,
                Some((0, b)) => {
                    seq.pop();
                    for (t, c) in self.floor_apply(b, floor) {
                        work.push((&coeff * &c, seq.clone(), t));
                    }
                    continue;
                }
                _ => {}
            }
            // normal order: r ascending left-to-right, ties by basis index
            let inversion = (0..seq.len().saturating_sub(1)).rev().find(|&i| {
                let (r1, b1) = seq[i];
                let (r2, b2) = seq[i + 1];
                r1 > r2 || (r1 == r2 && b1 > b2)
            });
            match inversion {
                None => {
                    let word: AffWord = seq.iter().map(|&(r, b)| ((-r) as u32, b)).collect();
                    out.add_term((word, floor), coeff);
                }
                Some(i) => {
                    let (r1, b1) = seq[i];
                    let (r2, b2) = seq[i + 1];
                    let mut swapped = seq.clone();
                    swapped.swap(i, i + 1);
                    work.push((coeff.clone(), swapped, floor));
                    // [x t^{r1}, y t^{r2}] = [x,y] t^{r1+r2} + r1 (x,y) δ_{r1,-r2} K
                    for (cidx, c) in self.algebra.bracket_of(b1, b2).iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut merged = seq.clone();
                        merged.splice(i..=i + 1, [(r1 + r2, cidx)]);
                        work.push((&coeff * c, merged, floor));
                    }
                    if r1 == -r2 {
                        let pair = self.algebra.form.at(b1, b2);
                        if !pair.is_zero() {
                            let central = &(&Rat::from_int(r1) * pair) * &self.level;
                            let mut dropped = seq.clone();
                            dropped.splice(i..=i + 1, []);
                            work.push((&coeff * &central, dropped, floor));
                        }
                    }
                }
            }
        }
    }

    /// `t`-degree grading: creation word degree (floor is degree 0).
    pub fn word_degree(word: &AffWord) -> u32 {
        word.iter().map(|&(n, _)| n).sum()
    }

    /// Translation on the vacuum module: the canonical derivation with
    /// `T(x t^{-n}) = n · x t^{-n-1}`.
    pub fn translate_vacuum(&self, v: &AffVector) -> AffVector {
        assert!(matches!(self.kind, AffKind::Vacuum));
        let mut out = AffVector::zero();
        for ((word, floor), coeff) in v.terms.iter() {
            for p in 0..word.len() {
                let mut seq: Vec<(i64, usize)> = word
                    .iter()
                    .map(|&(n, b)| (-(n as i64), b))
                    .collect();
                seq[p].0 -= 1;
                let c = coeff * &Rat::from_int(word[p].0 as i64);
                self.normalize_into(c, seq, *floor, &mut out);
            }
        }
        out
    }
}

/// Exact-rational vector in a vacuum or Weyl module.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffVector {
    terms: BTreeMap<AffKey, Rat>,
}

impl AffVector {
    pub fn zero() -> Self {
        AffVector {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_term(key: AffKey, coeff: Rat) -> Self {
        let mut v = Self::zero();
        v.add_term(key, coeff);
        v
    }

    pub fn add_term(&mut self, key: AffKey, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&AffKey, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &AffKey) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(w, _)| AffineModule::word_degree(w))
            .max()
            .unwrap_or(0)
    }
}

impl Coeff for AffVector {
    fn zero() -> Self {
        AffVector::zero()
    }
    fn is_zero(&self) -> bool {
        AffVector::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in rhs.terms.iter() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.terms.iter() {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }
    fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (key, c) in self.terms.iter() {
            out.add_term(key.clone(), c * k);
        }
        out
    }
}

/// Anything the affine currents act on with graded modes `x_b t^r`.
pub trait AffTarget {
    type Vec: Coeff + core::fmt::Debug + Ord + Clone;
    fn j_mode(&self, r: i64, b: usize, v: &Self::Vec) -> Self::Vec;
    /// Maximal grading level present (0 for floor vectors).
    fn level_of(&self, v: &Self::Vec) -> i64;
}

impl AffTarget for AffineModule {
    type Vec = AffVector;
    fn j_mode(&self, r: i64, b: usize, v: &AffVector) -> AffVector {
        self.apply_gen(r, b, v)
    }
    fn level_of(&self, v: &AffVector) -> i64 {
        v.max_degree() as i64
    }
}

/// Mode action of vacuum vectors on a target: `a_{(m)} w`. Fractional
/// modes are zero. Descendant modes reduce through the product-mode
/// expansion `(x_{(-1)} a)_{(m)} = Σ_i [x_{(-1-i)} a_{(m+i)} + a_{(-1+m-i)} x_{(i)}]`
/// with `x = T^(n-1) J_b`, whose modes are rescaled current modes.
pub struct AffineModes<T: AffTarget> {
    pub target: T,
    cache: RefCell<BTreeMap<(AffWord, i64, T::Vec), T::Vec>>,
}

impl<T: AffTarget> AffineModes<T> {
    pub fn new(target: T) -> Self {
        AffineModes {
            target,
            cache: RefCell::new(BTreeMap::new()),
        }
    }

    /// `(T^{(n-1)} J_b)_{(m)} = (-1)^{n-1} binom(m, n-1) x_b t^{m-n+1}`.
    fn shifted_current_mode(&self, n: u32, b: usize, m: i64, w: &T::Vec) -> T::Vec {
        let j = n - 1;
        let sign = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
        let coeff = &sign * &binomial(&Rat::from_int(m), j);
        if coeff.is_zero() {
            return T::Vec::zero();
        }
        self.target.j_mode(m - j as i64, b, w).scale(&coeff)
    }

    /// `a_{(m)} w` for `a` a single vacuum basis word.
    pub fn word_mode(&self, word: &[(u32, usize)], m: i64, w: &T::Vec) -> T::Vec {
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

    fn word_mode_uncached(&self, word: &[(u32, usize)], m: i64, w: &T::Vec) -> T::Vec {
        let Some(&(n1, b1)) = word.first() else {
            // vacuum: identity at mode -1, zero otherwise
            return if m == -1 { w.clone() } else { T::Vec::zero() };
        };
        let rest = &word[1..];
        let rest_deg: i64 = rest.iter().map(|&(n, _)| n as i64).sum();
        let w_lev = self.target.level_of(w);
        let mut acc = T::Vec::zero();
        // Σ_i x_{(-1-i)} (rest_{(m+i)} w): rest modes vanish past the
        // degree bound
        let i_max_first = rest_deg + w_lev - 1 - m;
        let mut i = 0i64;
        while i <= i_max_first {
            let inner = self.word_mode(rest, m + i, w);
            if !inner.is_zero() {
                let outer = self.shifted_current_mode(n1, b1, -1 - i, &inner);
                acc = acc.add(&outer);
            }
            i += 1;
        }
        // Σ_i rest_{(-1+m-i)} (x_{(i)} w): current modes vanish past the
        // target level
        let i_max_second = w_lev + n1 as i64 - 1;
        let mut i = 0i64;
        while i <= i_max_second {
            let inner = self.shifted_current_mode(n1, b1, i, w);
            if !inner.is_zero() {
                let outer = self.word_mode(rest, -1 + m - i, &inner);
                acc = acc.add(&outer);
            }
            i += 1;
        }
        acc
    }

    /// `a_{(m)} w` for a general vacuum vector `a`; fractional `m` gives 0.
    pub fn mode(&self, a: &AffVector, m: &Rat, w: &T::Vec) -> T::Vec {
        let Some(mi) = m.to_integer() else {
            return T::Vec::zero();
        };
        let mut acc = T::Vec::zero();
        for ((word, _), coeff) in a.terms() {
            let part = self.word_mode(word, mi, w);
            acc = acc.add(&part.scale(coeff));
        }
        acc
    }

    /// Largest mode index with a possibly nonzero action, by degree count.
    pub fn mode_upper_bound(&self, a: &AffVector, w: &T::Vec) -> i64 {
        a.max_degree() as i64 + self.target.level_of(w) - 1
    }
}

/// The Sugawara vector `L = 1/(2(k+h^∨)) Σ_i J_{x_i} J_{x^i}` in the
/// vacuum module.
pub fn sugawara_vector(vacuum: &AffineModule) -> AffVector {
    let alg = &vacuum.algebra;
    let dual = alg.dual_basis().expect("nondegenerate form");
    let denom = &(&vacuum.level + &alg.dual_coxeter) * &Rat::from_int(2);
    assert!(!denom.is_zero(), "critical level");
    let mut acc = AffVector::zero();
    for i in 0..alg.dim {
        // x^i = Σ_j (F^{-1})_{ij} x_j
        for j in 0..alg.dim {
            let c = dual.at(i, j);
            if c.is_zero() {
                continue;
            }
            let inner = vacuum.apply_gen(-1, j, &vacuum.vacuum_vector());
            let word = vacuum.apply_gen(-1, i, &inner);
            acc = acc.add(&word.scale(c));
        }
    }
    acc.scale(&denom.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::algebra::LieAlgebraData;
    use crate::affine::irrep::sl2_irrep;
    use crate::lambda::series::LambdaSeries;

    const E: usize = 0;
    const H: usize = 1;
    const F: usize = 2;

    fn vac(k: i64) -> AffineModule {
        AffineModule::vacuum(LieAlgebraData::sl2(), Rat::from_int(k))
    }

    /// `[J_x λ J_y] = J_{[x,y]} + k (x,y) λ` read off through modes.
    #[test]
    fn current_bracket_matches_affine_relations() {
        let v = vac(3);
        let modes = AffineModes::new(v.clone());
        let j = |b: usize| v.apply_gen(-1, b, &v.vacuum_vector());
        for (x, y) in [(E, F), (H, E), (H, F), (E, E), (H, H)] {
            let jy = j(y);
            // λ^(0) coefficient: [x,y] t^{-1} vac
            let zeroth = modes.mode(&j(x), &Rat::zero(), &jy);
            let mut expect = AffVector::zero();
            for (c_idx, c) in v.algebra.bracket_of(x, y).iter().enumerate() {
                if !c.is_zero() {
                    expect = expect.add(&j(c_idx).scale(c));
                }
            }
            assert_eq!(zeroth, expect, "zeroth mode of ({x},{y})");
            // λ^(1) coefficient: k (x,y) |0>
            let first = modes.mode(&j(x), &Rat::one(), &jy);
            let pair = v.algebra.form.at(x, y).clone();
            assert_eq!(
                first,
                v.vacuum_vector().scale(&(&pair * &v.level)),
                "first mode of ({x},{y})"
            );
            // nothing above
            assert!(modes.mode(&j(x), &Rat::from_int(2), &jy).is_zero());
        }
    }

    #[test]
    fn weyl_floor_action() {
        let alg = LieAlgebraData::sl2();
        let weyl = AffineModule::weyl(alg.clone(), Rat::one(), sl2_irrep(1));
        let b = weyl.floor_vector(0);
        // e kills the highest-weight vector, f lowers it
        assert!(weyl.apply_gen(0, E, &b).is_zero());
        assert_eq!(weyl.apply_gen(0, F, &b), weyl.floor_vector(1));
        // h acts by the weight
        assert_eq!(weyl.apply_gen(0, H, &b), b.scale(&Rat::one()));
        // positive modes kill the floor
        assert!(weyl.apply_gen(1, F, &b).is_zero());
    }

    /// The Sugawara vector satisfies `[L_λ L] = (2λ + T) L + (c/12) λ^3`.
    #[test]
    fn sugawara_is_a_conformal_vector() {
        for k in [1i64, 2, 3] {
            let v = vac(k);
            let modes = AffineModes::new(v.clone());
            let l = sugawara_vector(&v);
            let c = crate::affine::algebra::central_charge(&v.algebra, &v.level).unwrap();
            // assemble [L_λ L] as a series
            let mut bracket = LambdaSeries::<AffVector>::zero();
            let top = modes.mode_upper_bound(&l, &l);
            for n in 0..=top {
                bracket.add_term(Rat::from_int(n), modes.mode(&l, &Rat::from_int(n), &l));
            }
            let mut expect = LambdaSeries::<AffVector>::zero();
            expect.add_term(Rat::zero(), v.translate_vacuum(&l));
            expect.add_term(Rat::one(), l.scale(&Rat::from_int(2)));
            // (c/12) λ^3 = (c/2) λ^(3)
            expect.add_term(
                Rat::from_int(3),
                v.vacuum_vector().scale(&(&c / &Rat::from_int(2))),
            );
            assert!(bracket.agrees_with(&expect), "k = {k}");
        }
    }

    /// On the vacuum module the Sugawara zero mode is the canonical
    /// translation derivation.
    #[test]
    fn sugawara_mode_zero_is_translation() {
        let v = vac(2);
        let modes = AffineModes::new(v.clone());
        let l = sugawara_vector(&v);
        let samples = [
            v.apply_gen(-1, E, &v.vacuum_vector()),
            v.apply_gen(-2, H, &v.apply_gen(-1, F, &v.vacuum_vector())),
        ];
        for s in samples {
            assert_eq!(modes.mode(&l, &Rat::zero(), &s), v.translate_vacuum(&s));
        }
    }
}
