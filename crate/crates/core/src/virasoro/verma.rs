//! Virasoro highest-weight modules with exact PBW straightening.
//!
//! Two module kinds share the code: the Verma module `M^c_h` (parts
//! `>= 1`, `L_0` acts by `h` on the highest-weight vector) and the vacuum
//! module underlying the universal Virasoro vertex algebra (parts `>= 2`,
//! every mode `L_n` with `n >= -1` kills the vacuum).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::lambda::series::Coeff;
use crate::rat::Rat;
use crate::virasoro::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VirKind {
    /// Verma module with highest weight `h`.
    Verma { h: Rat },
    /// Vacuum module: `h = 0` and `L_{-1}` kills the highest-weight vector.
    Vacuum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirasoroModule {
    pub c: Rat,
    pub kind: VirKind,
}

impl VirasoroModule {
    pub fn verma(c: Rat, h: Rat) -> Self {
        VirasoroModule {
            c,
            kind: VirKind::Verma { h },
        }
    }

    pub fn vacuum(c: Rat) -> Self {
        VirasoroModule {
            c,
            kind: VirKind::Vacuum,
        }
    }

    pub fn highest_weight(&self) -> Rat {
        match &self.kind {
            VirKind::Verma { h } => h.clone(),
            VirKind::Vacuum => Rat::zero(),
        }
    }

    fn min_part(&self) -> u32 {
        match self.kind {
            VirKind::Verma { .. } => 1,
            VirKind::Vacuum => 2,
        }
    }

    pub fn highest_weight_vector(&self) -> VermaVector {
        VermaVector::from_term(Partition::empty(), Rat::one())
    }

    /// Apply `L_n` to a vector: the commutator action through repeated
    /// adjacent swaps using `[L_n, L_m] = (n-m) L_{n+m} + (n^3-n)/12 C δ_{n,-m}`.
    pub fn apply_mode(&self, n: i64, v: &VermaVector) -> VermaVector {
        let mut out = VermaVector::zero();
        for (word, coeff) in v.terms.iter() {
            let mut seq = vec![n];
            seq.extend(word.modes());
            self.normalize_into(coeff.clone(), seq, &mut out);
        }
        out
    }

    /// Apply a mode sequence left-to-right (the rightmost mode acts first).
    pub fn apply_word(&self, modes: &[i64], v: &VermaVector) -> VermaVector {
        let mut cur = v.clone();
        for &m in modes.iter().rev() {
            cur = self.apply_mode(m, &cur);
        }
        cur
    }

    /// The translation operator `T = L_{-1}`.
    pub fn translate(&self, v: &VermaVector) -> VermaVector {
        self.apply_mode(-1, v)
    }

    fn normalize_into(&self, coeff: Rat, seq: Vec<i64>, out: &mut VermaVector) {
        let min_part = self.min_part();
        let mut work = vec![(coeff, seq)];
        while let Some((coeff, mut seq)) = work.pop() {
            if coeff.is_zero() {
                continue;
            }
            // modes that reach the highest-weight vector evaluate directly
            match seq.last().copied() {
                None => {
                    out.add_term(Partition::empty(), coeff);
                    continue;
                }
                Some(m) if m > 0 => continue,
                Some(0) => {
                    let h = self.highest_weight();
                    if h.is_zero() {
                        continue;
                    }
                    seq.pop();
                    work.push((&coeff * &h, seq));
                    continue;
                }
                Some(-1) if min_part == 2 => continue,
                _ => {}
            }
            // rightmost adjacent inversion; sorted all-negative words are normal
            match (0..seq.len() - 1).rev().find(|&i| seq[i] > seq[i + 1]) {
                None => {
                    let parts: Vec<u32> = seq.iter().map(|&m| (-m) as u32).collect();
                    debug_assert!(parts.iter().all(|&p| p >= min_part));
                    out.add_term(Partition::new(parts), coeff);
                }
                Some(i) => {
                    let (a, b) = (seq[i], seq[i + 1]);
                    // swapped order
                    let mut swapped = seq.clone();
                    swapped.swap(i, i + 1);
                    work.push((coeff.clone(), swapped));
                    // (a-b) L_{a+b}
                    let mut merged = seq.clone();
                    merged.splice(i..=i + 1, [a + b]);
                    work.push((&coeff * &Rat::from_int(a - b), merged));
                    // central term
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

    /// Conformal weight of a homogeneous basis word.
    pub fn word_weight(&self, w: &Partition) -> Rat {
        &self.highest_weight() + &Rat::from_int(w.level() as i64)
    }
}

/// An exact-rational linear combination of PBW partition words applied to
/// the highest-weight vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct VermaVector {
    terms: BTreeMap<Partition, Rat>,
}

impl VermaVector {
    pub fn zero() -> Self {
        VermaVector {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_term(word: Partition, coeff: Rat) -> Self {
        let mut v = Self::zero();
        v.add_term(word, coeff);
        v
    }

    pub fn add_term(&mut self, word: Partition, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let updated = match self.terms.get(&word) {
            Some(old) => old + &coeff,
            None => coeff,
        };
        if updated.is_zero() {
            self.terms.remove(&word);
        } else {
            self.terms.insert(word, updated);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Partition) -> Rat {
        self.terms.get(word).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest word level appearing (0 for the highest-weight vector and
    /// for zero).
    pub fn max_level(&self) -> u32 {
        self.terms.keys().map(Partition::level).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lv = None;
        for w in self.terms.keys() {
            match lv {
                None => lv = Some(w.level()),
                Some(l) if l == w.level() => {}
                _ => return false,
            }
        }
        true
    }
}

impl Coeff for VermaVector {
    fn zero() -> Self {
        VermaVector::zero()
    }
    fn is_zero(&self) -> bool {
        VermaVector::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in rhs.terms.iter() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (w, c) in self.terms.iter() {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
    fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (w, c) in self.terms.iter() {
            out.add_term(w.clone(), c * k);
        }
        out
    }
}

impl fmt::Display for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest level first, like the usual singular-vector displays
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0.cmp(a.0));
        for (i, (w, c)) in items.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "({c}) b")?;
            } else {
                write!(f, "({c}) {w} b")?;
            }
        }
        Ok(())
    }
}

/// `commutator_action(n, v)`: the `L_n` action on a Verma vector.
pub fn commutator_action(module: &VirasoroModule, n: i64, v: &VermaVector) -> VermaVector {
    module.apply_mode(n, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(parts: &[u32]) -> VermaVector {
        VermaVector::from_term(Partition::new(parts.to_vec()), Rat::one())
    }

    #[test]
    fn basic_commutators_on_highest_weight() {
        let h = Rat::new(1, 16);
        let c = Rat::new(1, 2);
        let m = VirasoroModule::verma(c.clone(), h.clone());
        // L_1 L_{-1} b = 2h b
        let v = m.apply_mode(1, &basis(&[1]));
        assert_eq!(v.coeff(&Partition::empty()), &Rat::from_int(2) * &h);
        // L_2 L_{-2} b = (4h + c/2) b
        let v = m.apply_mode(2, &basis(&[2]));
        assert_eq!(
            v.coeff(&Partition::empty()),
            &(&Rat::from_int(4) * &h) + &(&c / &Rat::from_int(2))
        );
        // L_1 L_{-2} b = 3 L_{-1} b
        let v = m.apply_mode(1, &basis(&[2]));
        assert_eq!(v.coeff(&Partition::new(vec![1])), Rat::from_int(3));
        assert_eq!(v.num_terms(), 1);
    }

    #[test]
    fn grading_is_respected() {
        let m = VirasoroModule::verma(Rat::new(7, 10), Rat::new(3, 80));
        let v = basis(&[3, 2, 2]);
        for n in [-3i64, -1, 2, 4] {
            let w = m.apply_mode(n, &v);
            for (word, _) in w.terms() {
                assert_eq!(word.level() as i64, 7 - n);
            }
        }
    }

    #[test]
    fn vacuum_kills_low_modes() {
        let m = VirasoroModule::vacuum(Rat::one());
        let vac = m.highest_weight_vector();
        assert!(m.apply_mode(-1, &vac).is_zero());
        assert!(m.apply_mode(0, &vac).is_zero());
        assert!(m.apply_mode(3, &vac).is_zero());
        assert!(!m.apply_mode(-2, &vac).is_zero());
    }

    #[test]
    fn virasoro_relations_hold_exactly() {
        // [L_n, L_m] v = (n-m) L_{n+m} v + (n^3-n)/12 c δ_{n,-m} v
        let m = VirasoroModule::verma(Rat::new(-22, 5), Rat::new(-1, 5));
        let vectors = [basis(&[1]), basis(&[2, 1]), basis(&[3, 2, 1]), basis(&[2, 2, 2])];
        for v in &vectors {
            for n in -4i64..=4 {
                for mm in -4i64..=4 {
                    let lhs = {
                        let a = m.apply_mode(n, &m.apply_mode(mm, v));
                        let b = m.apply_mode(mm, &m.apply_mode(n, v));
                        a.add(&b.neg())
                    };
                    let mut rhs = m.apply_mode(n + mm, v).scale(&Rat::from_int(n - mm));
                    if n == -mm {
                        let central = &Rat::new(n * n * n - n, 12) * &m.c;
                        rhs = rhs.add(&v.scale(&central));
                    }
                    assert_eq!(lhs, rhs, "failed at n={n}, m={mm}");
                }
            }
        }
    }
}
