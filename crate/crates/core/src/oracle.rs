//! Independent brute-force counterparts of the production operations,
//! used for cross-checking. Everything here is definitional and
//! unoptimized on purpose, and shares no code path with the production
//! implementations beyond the `Partition` and `NCSeries` value types.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::ncseries::NCSeries;
use crate::partitions::{all_partitions, Partition};
use crate::transforms::{moments_to_eta, r_to_moments};
use crate::{Error, Result};

/// Cap for [`brute_nc`] (filters the full Bell-number enumeration).
pub const BRUTE_NC_CAP: usize = 10;
/// Cap for [`brute_kreweras`] and [`brute_count_ll`].
pub const BRUTE_ORDER_CAP: usize = 8;
/// Cap for [`brute_n_counts`].
pub const BRUTE_PAIR_CAP: usize = 7;

fn check(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain(format!("{what}: n must be positive")));
    }
    if n > cap {
        return Err(Error::SizeCap { what, n, cap });
    }
    Ok(())
}

/// The four-point definition of a crossing, checked over all quadruples.
fn crosses_by_definition(p: &Partition) -> bool {
    let memb = p.membership();
    let n = p.n();
    for i in 1..=n {
        for j in i + 1..=n {
            if memb[j] == memb[i] {
                continue;
            }
            for k in j + 1..=n {
                if memb[k] != memb[i] {
                    continue;
                }
                for l in k + 1..=n {
                    if memb[l] == memb[j] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Crossing test via pairwise block interleaving: two blocks cross exactly
/// when their merged sequence alternates source at least three times.
fn blocks_interleave(a: &[usize], b: &[usize]) -> bool {
    let mut switches = 0usize;
    let mut last_from_a: Option<bool> = None;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i] < b[j]);
        if last_from_a != Some(take_a) {
            if last_from_a.is_some() {
                switches += 1;
            }
            last_from_a = Some(take_a);
        }
        if take_a {
            i += 1;
        } else {
            j += 1;
        }
    }
    switches >= 3
}

fn noncrossing_by_pairs(blocks: &[Vec<usize>]) -> bool {
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            if blocks_interleave(a, b) {
                return false;
            }
        }
    }
    true
}

/// Memo of the filtered enumeration; the fill is idempotent. Caching keeps
/// repeated oracle calls affordable without touching the production
/// enumeration path.
fn nc_memo(n: usize) -> Result<Arc<Vec<Partition>>> {
    static TABLE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Partition>>>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = table.lock().unwrap().get(&n) {
        return Ok(Arc::clone(hit));
    }
    let computed = Arc::new(
        all_partitions(n)?
            .into_iter()
            .filter(|p| !crosses_by_definition(p))
            .collect::<Vec<_>>(),
    );
    let mut table = table.lock().unwrap();
    Ok(Arc::clone(table.entry(n).or_insert(computed)))
}

/// `NC(n)` as the definitional filter of [`all_partitions`].
pub fn brute_nc(n: usize) -> Result<Vec<Partition>> {
    check("brute_nc", n, BRUTE_NC_CAP)?;
    Ok(nc_memo(n)?.as_ref().clone())
}

/// Kreweras complement as the largest `ρ ∈ NC(n)` (reversed refinement)
/// whose odd/even interleaving with `p` is non-crossing. The interleaving,
/// the crossing test, and the refinement comparison are all re-derived
/// locally.
pub fn brute_kreweras(p: &Partition) -> Result<Partition> {
    check("brute_kreweras", p.n(), BRUTE_ORDER_CAP)?;
    if crosses_by_definition(p) {
        return Err(Error::domain("brute_kreweras: input must be non-crossing"));
    }
    let interleave = |rho: &Partition| -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for b in p.blocks() {
            blocks.push(b.iter().map(|a| 2 * a - 1).collect());
        }
        for b in rho.blocks() {
            blocks.push(b.iter().map(|a| 2 * a).collect());
        }
        blocks
    };
    let coarser_or_equal = |fine: &Partition, coarse: &Partition| -> bool {
        let mut memb = vec![usize::MAX; coarse.n() + 1];
        for (bi, b) in coarse.blocks().iter().enumerate() {
            for &x in b {
                memb[x] = bi;
            }
        }
        fine.blocks()
            .iter()
            .all(|b| b.iter().all(|&x| memb[x] == memb[b[0]]))
    };
    let admissible = nc_memo(p.n())?;
    let candidates: Vec<&Partition> = admissible
        .iter()
        .filter(|rho| noncrossing_by_pairs(&interleave(rho)))
        .collect::<Vec<_>>();
    let best = candidates
        .iter()
        .find(|top| candidates.iter().all(|rho| coarser_or_equal(rho, top)))
        .expect("the admissible set always has a maximum");
    Ok((*best).clone())
}

/// `card{ρ ∈ NC(n) : ρ ≫ p, |ρ| = size}` by direct enumeration.
pub fn brute_count_ll(p: &Partition, size: usize) -> Result<u64> {
    check("brute_count_ll", p.n(), BRUTE_ORDER_CAP)?;
    let mut count = 0u64;
    for rho in nc_memo(p.n())?.iter() {
        if rho.num_blocks() == size && p.ll(rho)? {
            count += 1;
        }
    }
    Ok(count)
}

/// The pair `(N'(s,t), N''(s,t))` by enumeration:
/// `N'` counts `ρ ≪ 1_n` with `s ≤ ρ` and relative Kreweras complement
/// `K_ρ(s) = t`; `N''` counts `π` with `s ≪ π` and `t ≪ K(π)`.
pub fn brute_n_counts(s: &Partition, t: &Partition) -> Result<(u64, u64)> {
    if s.n() != t.n() {
        return Err(Error::domain("brute_n_counts: ground sets differ"));
    }
    check("brute_n_counts", s.n(), BRUTE_PAIR_CAP)?;
    let n = s.n();
    let full = Partition::full(n);
    let mut n_prime = 0u64;
    let mut n_double = 0u64;
    for rho in nc_memo(n)?.iter() {
        if rho.ll(&full)? && s.refines(rho)? && s.relative_kreweras(rho)? == *t {
            n_prime += 1;
        }
        if s.ll(rho)? && t.ll(&rho.kreweras()?)? {
            n_double += 1;
        }
    }
    Ok((n_prime, n_double))
}

/// `Reta` through the composition route `η ∘ R⁻¹`, i.e.
/// `moments_to_eta(r_to_moments(f))`; the production path is the direct
/// `≪`-filtered summation.
pub fn brute_reta(f: &NCSeries) -> Result<NCSeries> {
    moments_to_eta(&r_to_moments(f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::noncrossing_partitions;

    fn p(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn brute_nc_counts() {
        assert_eq!(brute_nc(1).unwrap().len(), 1);
        assert_eq!(brute_nc(4).unwrap().len(), 14);
        assert_eq!(brute_nc(5).unwrap().len(), 42);
        assert!(brute_nc(11).is_err());
    }

    #[test]
    fn brute_nc_matches_production() {
        for n in 1..=8 {
            assert_eq!(brute_nc(n).unwrap(), noncrossing_partitions(n).unwrap());
        }
    }

    #[test]
    fn interleave_crossing_detection() {
        assert!(blocks_interleave(&[1, 3], &[2, 4]));
        assert!(!blocks_interleave(&[1, 4], &[2, 3]));
        assert!(!blocks_interleave(&[1, 2], &[3, 4]));
        assert!(!blocks_interleave(&[1, 3, 5], &[2]));
        assert!(blocks_interleave(&[1, 3, 5], &[2, 4]));
    }

    #[test]
    fn brute_kreweras_examples() {
        assert_eq!(
            brute_kreweras(&Partition::full(4)).unwrap(),
            Partition::singletons(4)
        );
        assert_eq!(
            brute_kreweras(&p(3, &[&[1], &[2, 3]])).unwrap(),
            p(3, &[&[1, 3], &[2]])
        );
        assert!(brute_kreweras(&p(4, &[&[1, 3], &[2, 4]])).is_err());
    }

    #[test]
    fn brute_count_examples() {
        let nested = p(4, &[&[1, 4], &[2, 3]]);
        assert_eq!(brute_count_ll(&nested, 1).unwrap(), 1);
        assert_eq!(brute_count_ll(&nested, 2).unwrap(), 1);
        assert_eq!(brute_count_ll(&p(4, &[&[1, 2], &[3, 4]]), 1).unwrap(), 0);
    }

    #[test]
    fn brute_n_count_examples() {
        assert_eq!(
            brute_n_counts(&Partition::full(2), &Partition::singletons(2)).unwrap(),
            (1, 1)
        );
        assert_eq!(
            brute_n_counts(&Partition::singletons(2), &Partition::singletons(2)).unwrap(),
            (0, 0)
        );
    }
}
