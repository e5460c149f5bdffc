//! The three convolutions on distributions — free additive (`⊞`, linearized
//! by the R-transform), Boolean (`⊎`, linearized by the η-series), and free
//! multiplicative (`⊠`, boxed convolution of R-transforms) — together with
//! convolution powers and the degree-truncated positivity and growth
//! diagnostics.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::ncseries::{doc::format_rational, Word};
use crate::transforms::{eta_to_moments, moments_to_eta, moments_to_r, r_to_moments, Distribution};
use crate::{Error, Result};

/// Cap on the Gram-matrix word count `Σ_{j=1..cap} k^j`.
pub const GRAM_WORD_LIMIT: usize = 4096;

fn check_same_k(a: &Distribution, b: &Distribution, op: &str) -> Result<()> {
    if a.k() != b.k() {
        return Err(Error::domain(format!(
            "{op}: mismatched indeterminate counts ({} vs {})",
            a.k(),
            b.k()
        )));
    }
    Ok(())
}

/// Free additive convolution: the R-transforms add.
pub fn free_add_convolve(a: &Distribution, b: &Distribution) -> Result<Distribution> {
    check_same_k(a, b, "free_add_convolve")?;
    let sum = a.r_transform()?.add(&b.r_transform()?)?;
    Ok(Distribution::from_moments(r_to_moments(&sum)?))
}

/// Boolean convolution: the η-series add.
pub fn boolean_convolve(a: &Distribution, b: &Distribution) -> Result<Distribution> {
    check_same_k(a, b, "boolean_convolve")?;
    let sum = a.eta_series()?.add(&b.eta_series()?)?;
    Ok(Distribution::from_moments(eta_to_moments(&sum)?))
}

/// Free multiplicative convolution: the R-transform of the result is the
/// boxed convolution of the R-transforms.
pub fn free_mult_convolve(a: &Distribution, b: &Distribution) -> Result<Distribution> {
    check_same_k(a, b, "free_mult_convolve")?;
    let boxed = a.r_transform()?.boxed_convolution(&b.r_transform()?)?;
    Ok(Distribution::from_moments(r_to_moments(&boxed)?))
}

fn check_positive(t: &BigRational, op: &str) -> Result<()> {
    if !t.is_positive() {
        return Err(Error::domain(format!("{op}: power must be positive")));
    }
    Ok(())
}

/// The `t`-th free additive convolution power: scales the R-transform by
/// `t`. An integer `t = N` reproduces the `N`-fold `⊞`-convolution.
pub fn free_power(a: &Distribution, t: &BigRational) -> Result<Distribution> {
    check_positive(t, "free_power")?;
    let scaled = moments_to_r(a.moments())?.scale(t);
    Ok(Distribution::from_moments(r_to_moments(&scaled)?))
}

/// The `t`-th Boolean convolution power: scales the η-series by `t`.
pub fn boolean_power(a: &Distribution, t: &BigRational) -> Result<Distribution> {
    check_positive(t, "boolean_power")?;
    let scaled = moments_to_eta(a.moments())?.scale(t);
    Ok(Distribution::from_moments(eta_to_moments(&scaled)?))
}

/// Sign classification of the moment Gram matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GramSign {
    PositiveSemidefinite,
    Indefinite,
}

/// Outcome of [`gram_check`]: the Gram matrix of the words of length
/// `0..=degree_cap` (the empty word contributes `μ(1) = 1`), classified by
/// exact rational elimination. `witness` is a vector `v` with `vᵀGv < 0`,
/// present exactly when the matrix is indefinite; its coordinates follow
/// the word basis (empty word first, then words by degree and
/// lexicographic order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GramReport {
    pub degree_cap: usize,
    /// Number of nonempty words indexing the Gram matrix, `Σ_{j=1..cap} k^j`.
    pub matrix_dim: usize,
    pub min_eigen_sign: GramSign,
    pub witness: Option<Vec<BigRational>>,
}

/// Checks positive semidefiniteness of the Gram matrix
/// `G[(u,v)] = μ(u*·v)` over words `u`, `v` of length `0..=degree_cap`,
/// where `u*` is the reversed word (the indeterminates are selfadjoint and
/// coefficients are real). Decided by exact symmetric elimination; no
/// floating point.
pub fn gram_check(a: &Distribution, degree_cap: usize) -> Result<GramReport> {
    if degree_cap == 0 {
        return Err(Error::domain("gram_check: degree cap must be positive"));
    }
    if 2 * degree_cap > a.degree() {
        return Err(Error::domain(format!(
            "gram_check: needs moments up to degree {}, have {}",
            2 * degree_cap,
            a.degree()
        )));
    }
    let k = a.k();
    let mut matrix_dim = 0usize;
    let mut words: Vec<Option<Word>> = vec![None]; // empty word row
    for n in 1..=degree_cap {
        let layer = Word::enumerate(k, n);
        matrix_dim += layer.len();
        if matrix_dim > GRAM_WORD_LIMIT {
            return Err(Error::domain(format!(
                "gram_check: word count exceeds limit {GRAM_WORD_LIMIT}"
            )));
        }
        words.extend(layer.into_iter().map(Some));
    }

    let moment = |u: &Option<Word>, v: &Option<Word>| -> Result<BigRational> {
        let joined = match (u, v) {
            (None, None) => return Ok(BigRational::from_integer(1.into())),
            (Some(u), None) => reverse_word(u),
            (None, Some(v)) => v.clone(),
            (Some(u), Some(v)) => reverse_word(u).concat(v),
        };
        a.moments().coefficient(&joined)
    };

    let dim = words.len();
    let mut gram = vec![vec![BigRational::zero(); dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let value = moment(&words[i], &words[j])?;
            gram[i][j] = value.clone();
            gram[j][i] = value;
        }
    }

    let (sign, witness) = classify_psd(gram);
    Ok(GramReport {
        degree_cap,
        matrix_dim,
        min_eigen_sign: sign,
        witness,
    })
}

fn reverse_word(w: &Word) -> Word {
    let mut letters = w.letters().to_vec();
    letters.reverse();
    Word::new(letters).expect("reversal preserves validity")
}

/// Exact PSD test by symmetric (congruence) elimination. Returns a
/// negativity witness in the original coordinates when indefinite.
fn classify_psd(mut g: Vec<Vec<BigRational>>) -> (GramSign, Option<Vec<BigRational>>) {
    let dim = g.len();
    let original = g.clone();
    let mut active = vec![true; dim];
    // Each elimination step records (pivot index, factors S_jp/S_pp); the
    // congruence witness is recovered by unwinding these in reverse.
    let mut steps: Vec<(usize, Vec<(usize, BigRational)>)> = Vec::new();

    let finish = |mut v: Vec<BigRational>,
                  steps: &[(usize, Vec<(usize, BigRational)>)]|
     -> (GramSign, Option<Vec<BigRational>>) {
        for (pivot, factors) in steps.iter().rev() {
            let mut shift = BigRational::zero();
            for (j, f) in factors {
                shift += f * &v[*j];
            }
            v[*pivot] -= shift;
        }
        debug_assert!(quadratic_form(&original, &v).is_negative());
        (GramSign::Indefinite, Some(v))
    };

    loop {
        if let Some(i) = (0..dim).find(|&i| active[i] && g[i][i].is_negative()) {
            let mut y = vec![BigRational::zero(); dim];
            y[i] = BigRational::from_integer(1.into());
            return finish(y, &steps);
        }
        let zero_diag_pair = (0..dim)
            .filter(|&i| active[i] && g[i][i].is_zero())
            .find_map(|i| {
                (0..dim)
                    .find(|&j| active[j] && j != i && !g[i][j].is_zero())
                    .map(|j| (i, j))
            });
        if let Some((i, j)) = zero_diag_pair {
            // y = e_i − s·e_j makes yᵀGy = −2s·g_ij + s²·g_jj negative:
            // s = g_ij/g_jj when g_jj > 0, s = ±1 when g_jj = 0.
            let s = if g[j][j].is_zero() {
                if g[i][j].is_positive() {
                    BigRational::from_integer(1.into())
                } else {
                    BigRational::from_integer((-1).into())
                }
            } else {
                &g[i][j] / &g[j][j]
            };
            let mut y = vec![BigRational::zero(); dim];
            y[i] = BigRational::from_integer(1.into());
            y[j] = -s;
            return finish(y, &steps);
        }
        let Some(p) = (0..dim).find(|&i| active[i] && g[i][i].is_positive()) else {
            // remaining submatrix is zero
            return (GramSign::PositiveSemidefinite, None);
        };
        let pivot = g[p][p].clone();
        let factors: Vec<(usize, BigRational)> = (0..dim)
            .filter(|&j| active[j] && j != p && !g[j][p].is_zero())
            .map(|j| (j, &g[j][p] / &pivot))
            .collect();
        for i in 0..dim {
            if !active[i] || i == p {
                continue;
            }
            for j in 0..dim {
                if !active[j] || j == p {
                    continue;
                }
                let delta = &g[i][p] * &g[j][p] / &pivot;
                g[i][j] -= delta;
            }
        }
        for i in 0..dim {
            g[i][p] = BigRational::zero();
            g[p][i] = BigRational::zero();
        }
        active[p] = false;
        steps.push((p, factors));
    }
}

fn quadratic_form(g: &[Vec<BigRational>], v: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            acc += vi * vj * &g[i][j];
        }
    }
    acc
}

impl Serialize for GramReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("degree_cap", &self.degree_cap)?;
        map.serialize_entry("matrix_dim", &self.matrix_dim)?;
        map.serialize_entry(
            "min_eigen_sign",
            match self.min_eigen_sign {
                GramSign::PositiveSemidefinite => "positive_semidefinite",
                GramSign::Indefinite => "indefinite",
            },
        )?;
        let witness: Option<Vec<String>> = self
            .witness
            .as_ref()
            .map(|v| v.iter().map(format_rational).collect());
        map.serialize_entry("witness", &witness)?;
        map.end()
    }
}

/// Per-degree growth of the moments: for each degree `n ≤ D` the largest
/// `|m_w|^(1/n)` over stored words, and the overall minimal admissible
/// geometric bound. Purely diagnostic — a necessary-condition probe at
/// truncation, reported in floating point.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct GrowthReport {
    pub gamma_min: f64,
    pub per_degree: Vec<(usize, f64)>,
}

pub fn growth_report(a: &Distribution) -> GrowthReport {
    let mut max_abs: Vec<BigRational> = vec![BigRational::zero(); a.degree() + 1];
    for (w, c) in a.moments().terms() {
        let abs = c.abs();
        if abs > max_abs[w.len()] {
            max_abs[w.len()] = abs;
        }
    }
    let per_degree: Vec<(usize, f64)> = (1..=a.degree())
        .map(|n| {
            let root = max_abs[n]
                .to_f64()
                .expect("moment magnitudes fit in f64 range")
                .powf(1.0 / n as f64);
            (n, root)
        })
        .collect();
    let gamma_min = per_degree.iter().map(|&(_, r)| r).fold(0.0f64, f64::max);
    GrowthReport {
        gamma_min,
        per_degree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncseries::NCSeries;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn w(letters: &[u8]) -> Word {
        Word::new(letters.to_vec()).unwrap()
    }

    fn dist(k: usize, degree: usize, entries: &[(&[u8], i64, i64)]) -> Distribution {
        let mut f = NCSeries::zero(k, degree).unwrap();
        for (letters, n, d) in entries {
            f.set_coefficient(w(letters), rat(*n, *d)).unwrap();
        }
        Distribution::from_moments(f)
    }

    fn semicircle() -> Distribution {
        dist(1, 6, &[(&[1, 1], 1, 1), (&[1; 4], 2, 1), (&[1; 6], 5, 1)])
    }

    #[test]
    fn free_add_doubles_semicircle_r() {
        let sum = free_add_convolve(&semicircle(), &semicircle()).unwrap();
        let r = sum.r_transform().unwrap();
        assert_eq!(r.coefficient(&w(&[1, 1])).unwrap(), rat(2, 1));
        // moments of R = 2z² at degree 4: 2² · |NC₂(pairings of 4)| = 8
        assert_eq!(sum.moments().coefficient(&w(&[1; 4])).unwrap(), rat(8, 1));
    }

    #[test]
    fn convolution_algebra() {
        let a = dist(2, 4, &[(&[1], 1, 2), (&[2, 1], 3, 1), (&[1, 2, 2], -1, 4)]);
        let b = dist(2, 4, &[(&[2], 2, 1), (&[1, 1], -1, 3), (&[2, 1, 1, 2], 5, 1)]);
        let c = dist(2, 4, &[(&[1], -1, 1), (&[1, 2], 1, 6)]);
        let zero = dist(2, 4, &[]);

        // ⊠ is associative but not commutative for k ≥ 2
        for conv in [free_add_convolve, boolean_convolve, free_mult_convolve] {
            assert_eq!(
                conv(&conv(&a, &b).unwrap(), &c).unwrap(),
                conv(&a, &conv(&b, &c).unwrap()).unwrap()
            );
        }
        for conv in [free_add_convolve, boolean_convolve] {
            assert_eq!(conv(&a, &b).unwrap(), conv(&b, &a).unwrap());
        }
        assert_eq!(free_add_convolve(&a, &zero).unwrap(), a);
        assert_eq!(boolean_convolve(&a, &zero).unwrap(), a);

        let mismatched = dist(3, 4, &[(&[3], 1, 1)]);
        assert!(free_add_convolve(&a, &mismatched).is_err());
    }

    #[test]
    fn mult_unit_and_degree_one() {
        let a = dist(2, 4, &[(&[1], 1, 2), (&[2], 3, 1), (&[2, 1], -1, 4), (&[1, 1, 2], 2, 7)]);
        // the distribution whose R-transform is Δ is the ⊠-unit
        let unit = Distribution::from_moments(
            r_to_moments(&NCSeries::delta(2, 4).unwrap()).unwrap(),
        );
        assert_eq!(free_mult_convolve(&a, &unit).unwrap(), a);
        assert_eq!(free_mult_convolve(&unit, &a).unwrap(), a);
        // degree-1 moments multiply
        let b = dist(2, 4, &[(&[1], 5, 3), (&[2], -2, 1), (&[1, 2], 1, 1)]);
        let product = free_mult_convolve(&a, &b).unwrap();
        for letter in 1..=2u8 {
            assert_eq!(
                product.moments().coefficient(&w(&[letter])).unwrap(),
                a.moments().coefficient(&w(&[letter])).unwrap()
                    * b.moments().coefficient(&w(&[letter])).unwrap()
            );
        }
    }

    #[test]
    fn powers_reproduce_folds() {
        let a = dist(2, 5, &[(&[1], 1, 1), (&[2, 1], -2, 3), (&[1, 1, 2], 1, 2)]);
        assert_eq!(
            free_power(&a, &rat(2, 1)).unwrap(),
            free_add_convolve(&a, &a).unwrap()
        );
        let triple = boolean_convolve(&boolean_convolve(&a, &a).unwrap(), &a).unwrap();
        assert_eq!(boolean_power(&a, &rat(3, 1)).unwrap(), triple);
        // fractional powers invert integer powers
        assert_eq!(
            boolean_power(&boolean_power(&a, &rat(1, 5)).unwrap(), &rat(5, 1)).unwrap(),
            a
        );
        assert!(free_power(&a, &rat(0, 1)).is_err());
        assert!(boolean_power(&a, &rat(-1, 2)).is_err());
    }

    #[test]
    fn gram_semicircle_is_psd() {
        let report = gram_check(&semicircle(), 3).unwrap();
        assert_eq!(report.min_eigen_sign, GramSign::PositiveSemidefinite);
        assert_eq!(report.matrix_dim, 3);
        assert_eq!(report.witness, None);
    }

    #[test]
    fn gram_negative_second_moment_is_indefinite() {
        let bad = dist(1, 4, &[(&[1, 1], -1, 1)]);
        let report = gram_check(&bad, 2).unwrap();
        assert_eq!(report.min_eigen_sign, GramSign::Indefinite);
        let witness = report.witness.expect("indefinite report carries a witness");
        assert_eq!(witness.len(), 1 + report.matrix_dim);
    }

    #[test]
    fn gram_zero_distribution_is_psd() {
        let zero = dist(1, 6, &[]);
        let report = gram_check(&zero, 3).unwrap();
        assert_eq!(report.min_eigen_sign, GramSign::PositiveSemidefinite);
    }

    #[test]
    fn gram_detects_zero_diagonal_with_offdiagonal_mass() {
        // m₂ = 0 but m₄ = 1: the words z and zzz have zero diagonal entries
        // against themselves... G[(1),(111)] = m₄ = 1 with G[(1),(1)] = 0.
        let tricky = dist(1, 6, &[(&[1; 4], 1, 1)]);
        let report = gram_check(&tricky, 3).unwrap();
        assert_eq!(report.min_eigen_sign, GramSign::Indefinite);
        assert!(report.witness.is_some());
    }

    #[test]
    fn gram_preconditions() {
        assert!(gram_check(&semicircle(), 4).is_err());
        assert!(gram_check(&semicircle(), 0).is_err());
    }

    #[test]
    fn gram_relabeling_invariance() {
        // swapping the two indeterminates conjugates G by a permutation and
        // must not change the classification
        let a = dist(
            2,
            4,
            &[(&[1], 1, 1), (&[2], 2, 1), (&[1, 2], 1, 2), (&[2, 1], 1, 2), (&[1, 1], 3, 1)],
        );
        let swapped_entries: Vec<(Vec<u8>, BigRational)> = a
            .moments()
            .terms()
            .map(|(word, c)| {
                (
                    word.letters().iter().map(|&l| 3 - l).collect(),
                    c.clone(),
                )
            })
            .collect();
        let mut swapped_series = NCSeries::zero(2, 4).unwrap();
        for (letters, c) in swapped_entries {
            swapped_series
                .set_coefficient(Word::new(letters).unwrap(), c)
                .unwrap();
        }
        let swapped = Distribution::from_moments(swapped_series);
        assert_eq!(
            gram_check(&a, 2).unwrap().min_eigen_sign,
            gram_check(&swapped, 2).unwrap().min_eigen_sign
        );
    }

    #[test]
    fn growth_report_examples() {
        let semi = growth_report(&semicircle());
        assert!(semi.gamma_min <= 2.0);
        assert!(semi.gamma_min > 1.0);
        assert_eq!(semi.per_degree.len(), 6);

        let zero = growth_report(&dist(1, 4, &[]));
        assert_eq!(zero.gamma_min, 0.0);

        // scaling moments by cⁿ scales gamma_min by c
        let base = dist(1, 4, &[(&[1], 1, 1), (&[1, 1], 3, 1), (&[1, 1, 1], 2, 1)]);
        let scaled = dist(1, 4, &[(&[1], 2, 1), (&[1, 1], 12, 1), (&[1, 1, 1], 16, 1)]);
        let g1 = growth_report(&base);
        let g2 = growth_report(&scaled);
        assert!((g2.gamma_min - 2.0 * g1.gamma_min).abs() < 1e-12);
    }
}
