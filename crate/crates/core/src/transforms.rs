//! The moment / R-transform / η-series triangle, the `Reta` map between the
//! R and η pictures, and the Boolean Bercovici–Pata bijection on
//! distributions.
//!
//! Every map here is a finite partition-indexed summation on coefficients,
//! so all of them are exact over the rationals and mutually inverse pairs
//! invert exactly at any truncation degree:
//!
//! * moments → R: `Cf_w(R) = Σ_{π ∈ NC(n)} s(π)·Cf_{w;π}(M)` with the
//!   signed-Catalan weights `s(π)`;
//! * R → moments: `Cf_w(M) = Σ_{π ∈ NC(n)} Cf_{w;π}(R)`;
//! * moments → η: `Cf_w(η) = Σ_{π ∈ Int(n)} (−1)^{1+|π|}·Cf_{w;π}(M)`,
//!   equal to `M/(1+M)`;
//! * η → moments: `Cf_w(M) = Σ_{π ∈ Int(n)} Cf_{w;π}(η)`, equal to
//!   `η/(1−η)`;
//! * Reta: `Cf_w(Reta f) = Σ_{π ≪ 1_n} Cf_{w;π}(f)`, the direct summation
//!   form of η ∘ R⁻¹.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ncseries::{intervals, noncrossing, noncrossing_with_complements, NCSeries, Word};
use crate::partitions::Partition;
use crate::{Error, Result};

/// A moment-truncated distribution of a `k`-tuple: the normalization
/// `μ(1) = 1` is implicit and only the moment series is stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Distribution {
    moments: NCSeries,
}

impl Distribution {
    pub fn from_moments(moments: NCSeries) -> Distribution {
        Distribution { moments }
    }

    pub fn k(&self) -> usize {
        self.moments.k()
    }

    pub fn degree(&self) -> usize {
        self.moments.degree()
    }

    pub fn moments(&self) -> &NCSeries {
        &self.moments
    }

    pub fn into_moments(self) -> NCSeries {
        self.moments
    }

    /// The R-transform of the distribution, computed on demand.
    pub fn r_transform(&self) -> Result<NCSeries> {
        moments_to_r(&self.moments)
    }

    /// The η-series of the distribution, computed on demand.
    pub fn eta_series(&self) -> Result<NCSeries> {
        moments_to_eta(&self.moments)
    }
}

/// `s_m = (−1)^{m−1}·(2m−2)!/((m−1)!·m!)`, the signed Catalan numbers.
pub fn signed_catalan(m: usize) -> BigInt {
    assert!(m >= 1);
    let mut catalan = BigInt::one();
    // C_0 = 1, C_{j+1} = C_j · 2(2j+1)/(j+2)
    for j in 0..m - 1 {
        catalan = catalan * BigInt::from(2 * (2 * j + 1)) / BigInt::from(j + 2);
    }
    if m % 2 == 0 {
        -catalan
    } else {
        catalan
    }
}

fn s_for_complement_sizes(mut sizes: Vec<usize>) -> BigRational {
    static SHAPES: OnceLock<Mutex<HashMap<Vec<usize>, BigInt>>> = OnceLock::new();
    sizes.sort_unstable();
    let table = SHAPES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut table = table.lock().unwrap();
    let value = table
        .entry(sizes)
        .or_insert_with_key(|sizes| sizes.iter().map(|&m| signed_catalan(m)).product());
    BigRational::from(value.clone())
}

/// `s(π)`: the product of `s_{|B|}` over the blocks `B` of the Kreweras
/// complement of `π`. Requires a non-crossing partition.
pub fn s_coefficient(p: &Partition) -> Result<BigRational> {
    let complement = p.kreweras()?;
    Ok(s_for_complement_sizes(
        complement.blocks().iter().map(|b| b.len()).collect(),
    ))
}

fn word_transform(
    input: &NCSeries,
    mut weighted_family: impl FnMut(usize) -> Result<Vec<(Partition, BigRational)>>,
) -> Result<NCSeries> {
    let mut out = NCSeries::zero(input.k(), input.degree())?;
    for n in 1..=input.degree() {
        let family = weighted_family(n)?;
        for w in Word::enumerate(input.k(), n) {
            let mut total = BigRational::zero();
            for (pi, weight) in &family {
                let term = input.generalized_unchecked(&w, pi);
                if !term.is_zero() {
                    total += term * weight;
                }
            }
            out.set_coefficient(w, total)?;
        }
    }
    Ok(out)
}

fn alternating_weight(p: &Partition) -> BigRational {
    if p.num_blocks() % 2 == 1 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Moment series → R-transform: `Cf_w(R) = Σ_{π ∈ NC(n)} s(π)·Cf_{w;π}(M)`.
pub fn moments_to_r(moments: &NCSeries) -> Result<NCSeries> {
    word_transform(moments, |n| {
        let pairs = noncrossing_with_complements(n)?;
        Ok(pairs
            .iter()
            .map(|(pi, complement)| {
                let weight = s_for_complement_sizes(
                    complement.blocks().iter().map(|b| b.len()).collect(),
                );
                (pi.clone(), weight)
            })
            .collect())
    })
}

/// R-transform → moment series: `Cf_w(M) = Σ_{π ∈ NC(n)} Cf_{w;π}(R)`.
pub fn r_to_moments(r: &NCSeries) -> Result<NCSeries> {
    word_transform(r, |n| {
        Ok(noncrossing(n)?
            .iter()
            .map(|pi| (pi.clone(), BigRational::one()))
            .collect())
    })
}

/// Generalized coefficient of the moment series in terms of the
/// R-transform: `Cf_{w;q}(M) = Σ_{π ≤ q} Cf_{w;π}(R)`. Requires `q`
/// non-crossing on `{1..len(w)}`.
pub fn r_to_moments_generalized(r: &NCSeries, w: &Word, q: &Partition) -> Result<BigRational> {
    if !q.is_noncrossing() {
        return Err(Error::domain(
            "r_to_moments_generalized: partition must be non-crossing",
        ));
    }
    let mut total = BigRational::zero();
    for pi in noncrossing(q.n())?.iter() {
        if pi.refines(q)? {
            total += r.generalized_coefficient(w, pi)?;
        }
    }
    Ok(total)
}

/// Moment series → η-series:
/// `Cf_w(η) = Σ_{π ∈ Int(n)} (−1)^{1+|π|}·Cf_{w;π}(M)`.
pub fn moments_to_eta(moments: &NCSeries) -> Result<NCSeries> {
    word_transform(moments, |n| {
        Ok(intervals(n)?
            .iter()
            .map(|pi| {
                let weight = alternating_weight(pi);
                (pi.clone(), weight)
            })
            .collect())
    })
}

/// η-series → moment series: `Cf_w(M) = Σ_{π ∈ Int(n)} Cf_{w;π}(η)`.
pub fn eta_to_moments(eta: &NCSeries) -> Result<NCSeries> {
    word_transform(eta, |n| {
        Ok(intervals(n)?
            .iter()
            .map(|pi| (pi.clone(), BigRational::one()))
            .collect())
    })
}

fn ll_below_full(n: usize) -> Result<Vec<Partition>> {
    // π ≪ 1_n exactly when 1 and n lie in the same block of π
    Ok(noncrossing(n)?
        .iter()
        .filter(|pi| {
            let memb = pi.membership();
            memb[1] == memb[n]
        })
        .cloned()
        .collect())
}

/// The Reta map by its direct summation formula:
/// `Cf_w(Reta f) = Σ_{π ≪ 1_n} Cf_{w;π}(f)`.
pub fn reta(f: &NCSeries) -> Result<NCSeries> {
    word_transform(f, |n| {
        Ok(ll_below_full(n)?
            .into_iter()
            .map(|pi| (pi, BigRational::one()))
            .collect())
    })
}

/// Inverse of [`reta`]:
/// `Cf_w(Reta⁻¹ g) = Σ_{ρ ≪ 1_n} (−1)^{1+|ρ|}·Cf_{w;ρ}(g)`.
pub fn reta_inv(g: &NCSeries) -> Result<NCSeries> {
    word_transform(g, |n| {
        Ok(ll_below_full(n)?
            .into_iter()
            .map(|pi| {
                let weight = alternating_weight(&pi);
                (pi, weight)
            })
            .collect())
    })
}

/// Generalized coefficient of `Reta f`:
/// `Cf_{w;q}(Reta f) = Σ_{π ≪ q} Cf_{w;π}(f)`. Requires `q` non-crossing.
pub fn reta_generalized(f: &NCSeries, w: &Word, q: &Partition) -> Result<BigRational> {
    if !q.is_noncrossing() {
        return Err(Error::domain(
            "reta_generalized: partition must be non-crossing",
        ));
    }
    let mut total = BigRational::zero();
    for pi in noncrossing(q.n())?.iter() {
        if pi.ll(q)? {
            total += f.generalized_coefficient(w, pi)?;
        }
    }
    Ok(total)
}

fn check_positive(t: &BigRational, op: &str) -> Result<()> {
    if !t.is_positive() {
        return Err(Error::domain(format!("{op}: scale factor must be positive")));
    }
    Ok(())
}

/// `t·Reta(f/t)`; coefficientwise `Σ_{π ≪ 1_n} t^{1−|π|}·Cf_{w;π}(f)`.
pub fn scaled_reta(f: &NCSeries, t: &BigRational) -> Result<NCSeries> {
    check_positive(t, "scaled_reta")?;
    Ok(reta(&f.scale(&t.recip()))?.scale(t))
}

/// `t·Reta⁻¹(f/t)`, the signed analogue of [`scaled_reta`].
pub fn scaled_reta_inv(f: &NCSeries, t: &BigRational) -> Result<NCSeries> {
    check_positive(t, "scaled_reta_inv")?;
    Ok(reta_inv(&f.scale(&t.recip()))?.scale(t))
}

/// The Boolean Bercovici–Pata bijection: the distribution whose
/// R-transform equals the η-series of the input.
pub fn bp_map(d: &Distribution) -> Result<Distribution> {
    Ok(Distribution::from_moments(r_to_moments(&moments_to_eta(
        d.moments(),
    )?)?))
}

/// Inverse of [`bp_map`]: the distribution whose η-series equals the
/// R-transform of the input.
pub fn bp_inv(d: &Distribution) -> Result<Distribution> {
    Ok(Distribution::from_moments(eta_to_moments(&moments_to_r(
        d.moments(),
    )?)?))
}
