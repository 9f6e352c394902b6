//! A realization binds concrete module vectors to the bracket/product
//! calculus: the vertex algebra `V` acting on three modules `M1, M2, M3`
//! plus the intertwiner modes `a_{(k)} : M2 -> M3`.
//!
//! Everything the seven identity checkers need is expressed through this
//! trait: translations, integer algebra modes, rational intertwiner modes,
//! and grading data for mode-vanishing bounds and series truncation.

use alloc::vec::Vec;
use core::fmt::Debug;

use crate::lambda::series::{Coeff, LambdaSeries, Series2};
use crate::lambda::tpoly::iterated_t;
use crate::rat::{binomial, Rat};

pub trait Realization {
    type Alg: Coeff + Debug;
    type M1: Coeff + Debug;
    type M2: Coeff + Debug;
    type M3: Coeff + Debug;

    fn t_alg(&self, v: &Self::Alg) -> Self::Alg;
    fn t_m1(&self, a: &Self::M1) -> Self::M1;
    fn t_m2(&self, b: &Self::M2) -> Self::M2;
    fn t_m3(&self, u: &Self::M3) -> Self::M3;

    /// `v_{(n)}` acting on the vertex algebra itself.
    fn alg_mode_alg(&self, v: &Self::Alg, n: i64, x: &Self::Alg) -> Self::Alg;
    fn alg_mode_m1(&self, v: &Self::Alg, n: i64, x: &Self::M1) -> Self::M1;
    fn alg_mode_m2(&self, v: &Self::Alg, n: i64, x: &Self::M2) -> Self::M2;
    fn alg_mode_m3(&self, v: &Self::Alg, n: i64, x: &Self::M3) -> Self::M3;

    /// Intertwiner mode `a_{(k)} y`; zero off the exponent tower.
    fn int_mode(&self, a: &Self::M1, k: &Rat, y: &Self::M2) -> Self::M3;

    /// Grading above the floor (level); used only for vanishing bounds.
    fn lev_alg(&self, v: &Self::Alg) -> i64;
    fn lev_m1(&self, a: &Self::M1) -> i64;
    fn lev_m2(&self, b: &Self::M2) -> i64;
    fn lev_m3(&self, u: &Self::M3) -> i64;

    /// Top intertwiner exponent for floor vectors: `a_{(k)} y = 0` whenever
    /// `k > top_mode + lev(a) + lev(y)`. Module intertwiners have `-1`;
    /// symbolic primary towers have `m = h_a + h_b - 1 - h_c`.
    fn top_mode(&self) -> Rat;
}

/// Upper bound for nonvanishing algebra modes `v_{(n)} x`.
fn alg_top(lev_v: i64, lev_x: i64) -> i64 {
    lev_v + lev_x - 1
}

/// Top exponent of `[a_λ y]` by the grading bound.
pub fn int_top<R: Realization>(r: &R, a: &R::M1, y: &R::M2) -> Rat {
    &r.top_mode() + &Rat::from_int(r.lev_m1(a) + r.lev_m2(y))
}

/// `a · y = a_{(-1)} y`.
pub fn int_product<R: Realization>(r: &R, a: &R::M1, y: &R::M2) -> R::M3 {
    r.int_mode(a, &Rat::from_int(-1), y)
}

macro_rules! alg_bracket_fn {
    ($name:ident, $vec:ident, $mode:ident, $lev:ident) => {
        /// `[v_λ x] = Σ_{n>=0} λ^(n) v_{(n)} x`; exact (finitely many modes).
        pub fn $name<R: Realization>(r: &R, v: &R::Alg, x: &R::$vec) -> LambdaSeries<R::$vec> {
            let mut s = LambdaSeries::zero();
            let top = alg_top(r.lev_alg(v), r.$lev(x));
            for n in 0..=top.max(-1) {
                s.add_term(Rat::from_int(n), r.$mode(v, n, x));
            }
            s
        }
    };
}

alg_bracket_fn!(alg_bracket_alg, Alg, alg_mode_alg, lev_alg);
alg_bracket_fn!(alg_bracket_m1, M1, alg_mode_m1, lev_m1);
alg_bracket_fn!(alg_bracket_m2, M2, alg_mode_m2, lev_m2);
alg_bracket_fn!(alg_bracket_m3, M3, alg_mode_m3, lev_m3);

/// `[a_λ y]` assembled to `depth` retained exponents below the top.
/// Integer towers are finite and exact; fractional towers carry a cutoff.
pub fn int_bracket<R: Realization>(
    r: &R,
    a: &R::M1,
    y: &R::M2,
    depth: u32,
) -> LambdaSeries<R::M3> {
    let top = int_top(r, a, y);
    let mut s = LambdaSeries::zero();
    if top.is_integer() {
        // exponents n ∈ Z_{>=0} up to the top; nothing fractional exists
        let hi = top.to_integer().expect("small top");
        for n in 0..=hi.max(-1) {
            s.add_term(Rat::from_int(n), r.int_mode(a, &Rat::from_int(n), y));
        }
    } else {
        for j in 0..=depth {
            let e = &top - &Rat::from_int(j as i64);
            s.add_term(e.clone(), r.int_mode(a, &e, y));
        }
        s.set_cutoff(Some(&top - &Rat::from_int(depth as i64 + 1)));
    }
    s
}

/// The integer part `[a_λ y]^0`, exactly: the full bracket for integer
/// towers, zero for fractional ones.
pub fn int_bracket_integer_part<R: Realization>(
    r: &R,
    a: &R::M1,
    y: &R::M2,
) -> LambdaSeries<R::M3> {
    if int_top(r, a, y).is_integer() {
        int_bracket(r, a, y, 0)
    } else {
        LambdaSeries::zero()
    }
}

/// `[a_λ v] := -[v_{-λ-T} a]`, an `M1`-valued polynomial in λ.
pub fn skew_bracket_m1<R: Realization>(r: &R, a: &R::M1, v: &R::Alg) -> LambdaSeries<R::M1> {
    let inner = alg_bracket_m1(r, v, a);
    let mut out = LambdaSeries::zero();
    for (j, c) in inner.terms() {
        let ji = j.to_integer().expect("algebra bracket has integer degree") as u32;
        // (-λ-T)^(j) = (-1)^j Σ_{k<=j} λ^(j-k) T^(k)
        let sign = if ji % 2 == 0 { Rat::one() } else { -Rat::one() };
        for k in 0..=ji {
            let term = iterated_t(&|x: &R::M1| r.t_m1(x), k, c);
            out.add_term(
                Rat::from_int((ji - k) as i64),
                // overall minus from the skew definition
                term.scale(&-sign.clone()),
            );
        }
    }
    out
}

/// `(e^{T∂_λ} v) F` with the product `v · (coefficient)` on `M3`:
/// `Σ_n Σ_{r} λ^(n-r) (T^(r) v) · c_n`.
pub fn e_t_shift_alg<R: Realization>(
    r: &R,
    v: &R::Alg,
    f: &LambdaSeries<R::M3>,
) -> LambdaSeries<R::M3> {
    let mut out = LambdaSeries::zero();
    out.set_cutoff(f.cutoff().cloned());
    let cutoff = f.cutoff().cloned();
    for (n, c) in f.terms() {
        let mut k = 0u32;
        loop {
            let e = n - &Rat::from_int(k as i64);
            let keep = match &cutoff {
                Some(cut) => &e > cut,
                None => {
                    assert!(n.is_integer(), "fractional exponent needs a cutoff");
                    !e.is_negative()
                }
            };
            if !keep {
                break;
            }
            let tv = iterated_t(&|x: &R::Alg| r.t_alg(x), k, v);
            out.add_term(e, r.alg_mode_m3(&tv, -1, c));
            k += 1;
        }
    }
    out
}

/// `(e^{T∂_λ} a) F` for an `M2`-valued series, products through the
/// intertwiner: `Σ_n Σ_r λ^(n-r) (T^(r) a) · c_n`.
pub fn e_t_shift_m1<R: Realization>(
    r: &R,
    a: &R::M1,
    f: &LambdaSeries<R::M2>,
) -> LambdaSeries<R::M3> {
    let mut out = LambdaSeries::zero();
    out.set_cutoff(f.cutoff().cloned());
    let cutoff = f.cutoff().cloned();
    for (n, c) in f.terms() {
        let mut k = 0u32;
        loop {
            let e = n - &Rat::from_int(k as i64);
            let keep = match &cutoff {
                Some(cut) => &e > cut,
                None => {
                    assert!(n.is_integer(), "fractional exponent needs a cutoff");
                    !e.is_negative()
                }
            };
            if !keep {
                break;
            }
            let ta = iterated_t(&|x: &R::M1| r.t_m1(x), k, a);
            out.add_term(e, int_product(r, &ta, c));
            k += 1;
        }
    }
    out
}

/// `(∫_0^T dλ v) F = Σ_n (T^(n+1) v) · c_n` over integer exponents of `F`,
/// products on `M3`.
pub fn integral_0_t_alg<R: Realization>(r: &R, v: &R::Alg, f: &LambdaSeries<R::M3>) -> R::M3 {
    let mut acc = R::M3::zero();
    for (n, c) in f.integer_part().terms() {
        let ni = n.to_integer().expect("integer part") as u32;
        let tv = iterated_t(&|x: &R::Alg| r.t_alg(x), ni + 1, v);
        acc = acc.add(&r.alg_mode_m3(&tv, -1, c));
    }
    acc
}

/// `(∫_0^T dλ a) F = Σ_n (T^(n+1) a) · c_n` with intertwiner products.
pub fn integral_0_t_m1<R: Realization>(r: &R, a: &R::M1, f: &LambdaSeries<R::M2>) -> R::M3 {
    let mut acc = R::M3::zero();
    for (n, c) in f.integer_part().terms() {
        let ni = n.to_integer().expect("integer part") as u32;
        let ta = iterated_t(&|x: &R::M1| r.t_m1(x), ni + 1, a);
        acc = acc.add(&int_product(r, &ta, c));
    }
    acc
}

/// `(∫_{-T}^0 F dλ) · b = Σ_n (-1)^n (T^(n+1) c_n) · b` for an `M1`-valued
/// polynomial `F`.
pub fn integral_mt_0_product<R: Realization>(
    r: &R,
    f: &LambdaSeries<R::M1>,
    b: &R::M2,
) -> R::M3 {
    let mut acc = R::M3::zero();
    for (n, c) in f.terms() {
        let ni = n.to_integer().expect("integer exponent") as u32;
        let sign = if ni % 2 == 0 { Rat::one() } else { -Rat::one() };
        let tc = iterated_t(&|x: &R::M1| r.t_m1(x), ni + 1, c);
        acc = acc.add(&int_product(r, &tc.scale(&sign), b));
    }
    acc
}

/// `[a_μ F]` for an `M2`-valued λ-series: a two-variable series with the
/// λ exponents of `F` and the bracket towers in μ.
pub fn bracket_of_series<R: Realization>(
    r: &R,
    a: &R::M1,
    f: &LambdaSeries<R::M2>,
    depth: u32,
) -> Series2<R::M3> {
    assert!(f.cutoff().is_none(), "lambda side must be exact");
    let mut out = Series2::zero();
    for (x, c) in f.terms() {
        let b = int_bracket(r, a, c, depth);
        out.set_cutoffs(None, b.cutoff().cloned());
        for (y, u) in b.terms() {
            out.add_term(x.clone(), y.clone(), u.clone());
        }
    }
    out
}

/// Multiply a two-variable series by `μ^(j)` for integer `j >= 0`
/// (divided-power product on the μ exponent).
pub fn series2_mul_mu_mono<C: Coeff>(s: &Series2<C>, j: u32) -> Series2<C> {
    let mut out = Series2::zero();
    let (cx, cy) = s.cutoffs();
    out.set_cutoffs(
        cx.cloned(),
        cy.map(|c| c + &Rat::from_int(j as i64)),
    );
    for ((x, y), c) in s.terms() {
        let y1 = y + &Rat::from_int(j as i64);
        out.add_term(x.clone(), y1.clone(), c.scale(&binomial(&y1, j)));
    }
    out
}

/// Multiply by `λ^(j)` on the x exponent.
pub fn series2_mul_lambda_mono<C: Coeff>(s: &Series2<C>, j: u32) -> Series2<C> {
    let mut out = Series2::zero();
    let (cx, cy) = s.cutoffs();
    out.set_cutoffs(cx.map(|c| c + &Rat::from_int(j as i64)), cy.cloned());
    for ((x, y), c) in s.terms() {
        let x1 = x + &Rat::from_int(j as i64);
        out.add_term(x1.clone(), y.clone(), c.scale(&binomial(&x1, j)));
    }
    out
}

/// Divided `T` powers of any vector through a supplied translation.
pub fn t_power<C: Coeff>(t_op: &impl Fn(&C) -> C, k: u32, c: &C) -> C {
    iterated_t(t_op, k, c)
}

/// Collect the exponents of a series (for diagnostics).
pub fn exponents<C: Coeff>(f: &LambdaSeries<C>) -> Vec<Rat> {
    f.terms().map(|(e, _)| e.clone()).collect()
}
