//! Helpers shared by the integration suites: exact distances between
//! series and the exact tail bounds used for the convergence criteria.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use nckit::ncseries::{NCSeries, Word};
use nckit::partitions::{noncrossing_partitions, Partition};

pub fn catalan(n: usize) -> u64 {
    let factorial = |m: usize| -> u128 { (1..=m as u128).product::<u128>().max(1) };
    (factorial(2 * n) / (factorial(n) * factorial(n + 1))) as u64
}

/// Largest `|Cf_w(a) − Cf_w(b)|` over all words up to the common degree.
pub fn max_coeff_distance(a: &NCSeries, b: &NCSeries) -> BigRational {
    a.sub(b)
        .expect("series share an alphabet")
        .terms()
        .map(|(_, c)| c.abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

fn ll_below_full(n: usize) -> Vec<Partition> {
    let full = Partition::full(n);
    noncrossing_partitions(n)
        .unwrap()
        .into_iter()
        .filter(|pi| pi.ll(&full).unwrap())
        .collect()
}

/// `Σ_{π ≪ 1_n, |π| ≥ 2} |Cf_{w;π}(f)|`: the exact magnitude of the
/// scaled-Reta tail at word `w`, so that the distance between
/// `t·Reta(f/t)` (or its signed inverse) and `f` is at most this sum
/// divided by `t`, for any `t ≥ 1`.
pub fn ll_tail_bound(f: &NCSeries, w: &Word) -> BigRational {
    let mut total = BigRational::zero();
    for pi in ll_below_full(w.len()) {
        if pi.num_blocks() < 2 {
            continue;
        }
        total += f.generalized_coefficient(w, &pi).unwrap().abs();
    }
    total
}

/// `max_w` of [`ll_tail_bound`] over every word up to the series degree.
pub fn max_ll_tail_bound(f: &NCSeries) -> BigRational {
    let mut best = BigRational::zero();
    for n in 1..=f.degree() {
        for w in Word::enumerate(f.k(), n) {
            let bound = ll_tail_bound(f, &w);
            if bound > best {
                best = bound;
            }
        }
    }
    best
}

/// Exact majorant for the moment-level error of the Boolean-to-free power
/// chain. With `a_u = |Cf_u(eta)|` and `T_u` the `ll` tail bound of `eta`
/// at `u`, returns
///
/// `max_w Σ_{π ∈ NC(n)} [ Π_B (a_{w|B} + T_{w|B}·x) − Π_B a_{w|B} ]`
///
/// at `x = 1/n0`. The summand is a polynomial in `x` with nonnegative
/// coefficients and zero constant term, so `n0` times this value divided
/// by `N` bounds the true error for every `N ≥ n0`.
pub fn product_tail_excess(eta: &NCSeries, n0: &BigRational) -> BigRational {
    let x = n0.recip();
    let mut tail_memo: HashMap<Word, (BigRational, BigRational)> = HashMap::new();
    let mut data = |u: &Word| -> (BigRational, BigRational) {
        tail_memo
            .entry(u.clone())
            .or_insert_with(|| {
                let a = eta.coefficient(u).unwrap().abs();
                let t = ll_tail_bound(eta, u);
                (a, t)
            })
            .clone()
    };
    let mut best = BigRational::zero();
    for n in 1..=eta.degree() {
        let lattice = noncrossing_partitions(n).unwrap();
        for w in Word::enumerate(eta.k(), n) {
            let mut excess = BigRational::zero();
            for pi in &lattice {
                let mut base = BigRational::from_integer(1.into());
                let mut bumped = BigRational::from_integer(1.into());
                for block in pi.blocks() {
                    let (a, t) = data(&w.restrict(block));
                    bumped *= &a + &t * &x;
                    base *= a;
                }
                excess += bumped - base;
            }
            if excess > best {
                best = excess;
            }
        }
    }
    best
}
