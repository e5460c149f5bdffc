//! Set partitions of `{1..n}` in canonical block form, the non-crossing and
//! interval families, partial orders (reversed refinement and `≪`), Kreweras
//! complementation, outer-block statistics, and the parity-preserving
//! machinery on `{1..2n}`.
//!
//! Canonical form: every block is sorted ascending and blocks are sorted by
//! their minimum element. All equality is structural on canonical form.

use std::cmp::max;
use std::sync::OnceLock;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Default cap for [`all_partitions`] (Bell-number growth).
pub const ALL_PARTITIONS_CAP: usize = 12;
/// Default cap for [`noncrossing_partitions`] (Catalan-number growth).
pub const NONCROSSING_CAP: usize = 14;
/// Default cap for [`interval_partitions`] (`2^(n-1)` growth).
pub const INTERVAL_CAP: usize = 20;

fn env_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("NCKIT_MAX_N")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(0)
    })
}

fn check_size(what: &'static str, n: usize, default_cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain(format!("{what}: n must be positive")));
    }
    let cap = max(default_cap, env_cap());
    if n > cap {
        return Err(Error::SizeCap { what, n, cap });
    }
    Ok(())
}

/// A set partition of `{1..n}` in canonical block form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

/// A bijection of `{1..n}`; `images[i-1]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

/// The outer blocks of a non-crossing partition, listed by block index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OuterProfile {
    /// Indices (into `Partition::blocks`) of the outer blocks, ascending.
    pub outer_blocks: Vec<usize>,
    /// `|π|_out`, the number of outer blocks.
    pub count: usize,
}

/// `true` iff block `a` embraces block `b`: `min(a) ≤ min(b)` and
/// `max(a) ≥ max(b)`. Blocks need not be sorted; empty slices never embrace.
pub fn embraces(a: &[usize], b: &[usize]) -> bool {
    match (
        a.iter().min(),
        a.iter().max(),
        b.iter().min(),
        b.iter().max(),
    ) {
        (Some(amin), Some(amax), Some(bmin), Some(bmax)) => amin <= bmin && amax >= bmax,
        _ => false,
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

impl Partition {
    /// Builds a partition of `{1..n}` from the given blocks, canonicalizing
    /// block order and element order. Errors when the blocks are not
    /// pairwise disjoint nonempty sets covering exactly `{1..n}`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Partition> {
        if n == 0 {
            return Err(Error::domain("partition: n must be positive"));
        }
        let mut seen = vec![false; n + 1];
        let mut count = 0usize;
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::domain("partition: empty block"));
            }
            for &x in b {
                if x == 0 || x > n {
                    return Err(Error::domain(format!(
                        "partition: element {x} outside 1..={n}"
                    )));
                }
                if seen[x] {
                    return Err(Error::domain(format!("partition: element {x} repeated")));
                }
                seen[x] = true;
                count += 1;
            }
        }
        if count != n {
            return Err(Error::domain(format!(
                "partition: blocks cover {count} of {n} elements"
            )));
        }
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable();
        Ok(Partition { n, blocks })
    }

    /// `0_n`, the partition of `{1..n}` into singletons.
    pub fn singletons(n: usize) -> Partition {
        assert!(n > 0, "ground set must be nonempty");
        Partition {
            n,
            blocks: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    /// `1_n`, the partition of `{1..n}` into one block.
    pub fn full(n: usize) -> Partition {
        assert!(n > 0, "ground set must be nonempty");
        Partition {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `|π|`, the number of blocks.
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block index per element; entry `0` is unused.
    pub fn membership(&self) -> Vec<usize> {
        let mut memb = vec![usize::MAX; self.n + 1];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &x in b {
                memb[x] = bi;
            }
        }
        memb
    }

    /// `true` iff no `i < j < k < l` has `i ~ k` and `j ~ l` in two distinct
    /// blocks. Linear scan with a stack of open blocks.
    pub fn is_noncrossing(&self) -> bool {
        let memb = self.membership();
        let mut last = vec![0usize; self.blocks.len()];
        let mut first = vec![0usize; self.blocks.len()];
        for (bi, b) in self.blocks.iter().enumerate() {
            first[bi] = b[0];
            last[bi] = *b.last().unwrap();
        }
        let mut stack: Vec<usize> = Vec::new();
        for x in 1..=self.n {
            let b = memb[x];
            if first[b] == x {
                stack.push(b);
            }
            if *stack.last().unwrap() != b {
                return false;
            }
            if last[b] == x {
                stack.pop();
            }
        }
        true
    }

    /// `true` iff every block is an integer interval.
    pub fn is_interval(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.last().unwrap() - b[0] + 1 == b.len())
    }

    /// Reversed refinement: `self ≤ coarser`, i.e. every block of `coarser`
    /// is a union of blocks of `self`.
    pub fn refines(&self, coarser: &Partition) -> Result<bool> {
        if self.n != coarser.n {
            return Err(Error::domain(format!(
                "refines: ground sets differ ({} vs {})",
                self.n, coarser.n
            )));
        }
        let memb = coarser.membership();
        Ok(self
            .blocks
            .iter()
            .all(|b| b.iter().all(|&x| memb[x] == memb[b[0]])))
    }

    /// The `≪` order: `self ≤ coarser` and every block `C` of `coarser` has
    /// some block of `self` containing both `min(C)` and `max(C)`.
    pub fn ll(&self, coarser: &Partition) -> Result<bool> {
        if !self.refines(coarser)? {
            return Ok(false);
        }
        let memb = self.membership();
        Ok(coarser
            .blocks
            .iter()
            .all(|c| memb[c[0]] == memb[*c.last().unwrap()]))
    }

    /// The associated permutation: each block `b_1 < … < b_m` becomes the
    /// cycle `b_1 → b_2 → … → b_m → b_1`.
    pub fn associated_permutation(&self) -> Permutation {
        let mut images = vec![0usize; self.n];
        for b in &self.blocks {
            for w in b.windows(2) {
                images[w[0] - 1] = w[1];
            }
            images[b[b.len() - 1] - 1] = b[0];
        }
        Permutation { images }
    }

    /// Kreweras complement, via `P_{K(π)} = P_π⁻¹ ∘ P_{1_n}`.
    /// Requires a non-crossing partition.
    pub fn kreweras(&self) -> Result<Partition> {
        if !self.is_noncrossing() {
            return Err(Error::domain("kreweras: partition must be non-crossing"));
        }
        let perm = self
            .associated_permutation()
            .inverse()
            .compose(&Permutation::full_cycle(self.n));
        Ok(perm
            .cycle_partition()
            .expect("Kreweras permutation of a non-crossing partition is cycle-canonical"))
    }

    /// Relative Kreweras complement of `self` in `coarser`, via
    /// `P = P_self⁻¹ ∘ P_coarser`. Requires both non-crossing and
    /// `self ≤ coarser`.
    pub fn relative_kreweras(&self, coarser: &Partition) -> Result<Partition> {
        if !self.is_noncrossing() || !coarser.is_noncrossing() {
            return Err(Error::domain(
                "relative_kreweras: both partitions must be non-crossing",
            ));
        }
        if !self.refines(coarser)? {
            return Err(Error::domain(
                "relative_kreweras: first partition must refine the second",
            ));
        }
        let perm = self
            .associated_permutation()
            .inverse()
            .compose(&coarser.associated_permutation());
        Ok(perm
            .cycle_partition()
            .expect("relative Kreweras permutation is cycle-canonical"))
    }

    /// Outer blocks: blocks `A` with no block `B` satisfying
    /// `min(B) < min(A) ≤ max(A) < max(B)`. Requires non-crossing input.
    pub fn outer_profile(&self) -> Result<OuterProfile> {
        if !self.is_noncrossing() {
            return Err(Error::domain(
                "outer_profile: partition must be non-crossing",
            ));
        }
        let outer_blocks: Vec<usize> = (0..self.blocks.len())
            .filter(|&a| {
                let (amin, amax) = self.block_span(a);
                !(0..self.blocks.len()).any(|b| {
                    let (bmin, bmax) = self.block_span(b);
                    bmin < amin && amax < bmax
                })
            })
            .collect();
        let count = outer_blocks.len();
        Ok(OuterProfile {
            outer_blocks,
            count,
        })
    }

    fn block_span(&self, idx: usize) -> (usize, usize) {
        let b = &self.blocks[idx];
        (b[0], *b.last().unwrap())
    }

    /// Number of `ρ ∈ NC(n)` with `ρ ≫ self` and `|ρ| = size`, by the
    /// closed form `C(|π| − |π|_out, size − |π|_out)`.
    pub fn count_coarser_ll(&self, size: usize) -> Result<u64> {
        let out = self.outer_profile()?.count;
        let total = self.num_blocks();
        if size < out || size > total {
            return Ok(0);
        }
        Ok(binomial(total - out, size - out))
    }

    /// Total number of `ρ ∈ NC(n)` with `ρ ≫ self`: `2^(|π| − |π|_out)`.
    pub fn count_coarser_ll_total(&self) -> Result<u64> {
        let out = self.outer_profile()?.count;
        Ok(1u64 << (self.num_blocks() - out))
    }

    /// `true` iff every block lives entirely in the odd or entirely in the
    /// even elements of the ground set.
    pub fn is_parity_preserving(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|x| x % 2 == 1) || b.iter().all(|x| x % 2 == 0))
    }

    /// Interleaves `self` on the odd and `other` on the even positions of
    /// `{1..2n}`: blocks `{2a−1 | a ∈ A}` for `A ∈ self` and `{2b | b ∈ B}`
    /// for `B ∈ other`.
    pub fn parity_join(&self, other: &Partition) -> Result<Partition> {
        if self.n != other.n {
            return Err(Error::domain(format!(
                "parity_join: ground sets differ ({} vs {})",
                self.n, other.n
            )));
        }
        let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(self.num_blocks() + other.num_blocks());
        for b in &self.blocks {
            blocks.push(b.iter().map(|a| 2 * a - 1).collect());
        }
        for b in &other.blocks {
            blocks.push(b.iter().map(|a| 2 * a).collect());
        }
        blocks.sort_unstable();
        Ok(Partition {
            n: 2 * self.n,
            blocks,
        })
    }

    /// Inverse of [`Partition::parity_join`]: `None` when some block mixes
    /// parities. Requires an even ground set.
    pub fn parity_split(&self) -> Result<Option<(Partition, Partition)>> {
        if self.n % 2 != 0 {
            return Err(Error::domain("parity_split: ground set size must be even"));
        }
        if !self.is_parity_preserving() {
            return Ok(None);
        }
        let half = self.n / 2;
        let mut odd: Vec<Vec<usize>> = Vec::new();
        let mut even: Vec<Vec<usize>> = Vec::new();
        for b in &self.blocks {
            if b[0] % 2 == 1 {
                odd.push(b.iter().map(|x| (x + 1) / 2).collect());
            } else {
                even.push(b.iter().map(|x| x / 2).collect());
            }
        }
        Ok(Some((
            Partition {
                n: half,
                blocks: odd,
            },
            Partition {
                n: half,
                blocks: even,
            },
        )))
    }

    /// Parent of block `idx` in the embracing order: `None` for outer
    /// blocks, otherwise the unique strict embracer that every other strict
    /// embracer also embraces. Requires a parity-preserving non-crossing
    /// partition of an even ground set.
    pub fn parent_block(&self, idx: usize) -> Result<Option<usize>> {
        if self.n % 2 != 0 || !self.is_parity_preserving() || !self.is_noncrossing() {
            return Err(Error::domain(
                "parent_block: requires a parity-preserving non-crossing partition of {1..2n}",
            ));
        }
        if idx >= self.blocks.len() {
            return Err(Error::domain(format!(
                "parent_block: block index {idx} out of range"
            )));
        }
        Ok(self.parent_block_unchecked(idx))
    }

    fn parent_block_unchecked(&self, idx: usize) -> Option<usize> {
        let (amin, amax) = self.block_span(idx);
        // Strict embracers are totally ordered by embracing; the parent is
        // the innermost one (largest min).
        (0..self.blocks.len())
            .filter(|&b| {
                let (bmin, bmax) = self.block_span(b);
                b != idx && bmin < amin && amax < bmax
            })
            .max_by_key(|&b| self.block_span(b).0)
    }

    /// `true` iff the partition has exactly two outer blocks. Requires a
    /// parity-preserving non-crossing partition of `{1..2n}`.
    pub fn has_exactly_two_outer(&self) -> Result<bool> {
        if self.n % 2 != 0 || !self.is_parity_preserving() {
            return Err(Error::domain(
                "has_exactly_two_outer: requires a parity-preserving partition of {1..2n}",
            ));
        }
        Ok(self.outer_profile()?.count == 2)
    }
}

/// The unique `π ∈ NC(n)` with `s ≪ π` and `t ≪ K(π)`, when it exists.
///
/// Existence is equivalent to `t ≤ K(s)` together with
/// `P_s⁻¹(1) = P_t(n)`; in that case the interleaving of `s` and `t` on
/// `{1..2n}` is non-crossing with exactly two outer blocks, and repeatedly
/// joining a non-outer block to its same-parity parent (lowest block
/// minimum first) terminates at the interleaving of `π` and `K(π)`.
pub fn unique_pi_for(s: &Partition, t: &Partition) -> Result<Option<Partition>> {
    if s.n != t.n {
        return Err(Error::domain(format!(
            "unique_pi_for: ground sets differ ({} vs {})",
            s.n, t.n
        )));
    }
    if !s.is_noncrossing() || !t.is_noncrossing() {
        return Err(Error::domain(
            "unique_pi_for: both partitions must be non-crossing",
        ));
    }
    let n = s.n;
    if !t.refines(&s.kreweras()?)? {
        return Ok(None);
    }
    let s_inv_one = s.associated_permutation().inverse().apply(1);
    let t_of_n = t.associated_permutation().apply(n);
    if s_inv_one != t_of_n {
        return Ok(None);
    }

    let mut theta = s.parity_join(t)?;
    'joins: loop {
        let outer: Vec<usize> = theta.outer_profile()?.outer_blocks;
        for idx in 0..theta.num_blocks() {
            if outer.contains(&idx) {
                continue;
            }
            let parent = theta
                .parent_block_unchecked(idx)
                .expect("non-outer block has a parent");
            if theta.blocks[idx][0] % 2 == theta.blocks[parent][0] % 2 {
                let mut blocks = theta.blocks.clone();
                let absorbed = blocks.remove(max(idx, parent));
                blocks[idx.min(parent)].extend(absorbed);
                blocks[idx.min(parent)].sort_unstable();
                blocks.sort_unstable();
                theta = Partition {
                    n: theta.n,
                    blocks,
                };
                continue 'joins;
            }
        }
        break;
    }
    let (pi, rho) = theta
        .parity_split()?
        .expect("joined partition stays parity-preserving");
    debug_assert_eq!(rho, pi.kreweras()?);
    Ok(Some(pi))
}

/// Every set partition of `{1..n}`, canonical, sorted lexicographically on
/// canonical block form. Count is the Bell number.
pub fn all_partitions(n: usize) -> Result<Vec<Partition>> {
    check_size("all_partitions", n, ALL_PARTITIONS_CAP)?;
    let mut out: Vec<Partition> = Vec::new();
    // Restricted growth strings: a[i] is the block of element i+1.
    let mut a = vec![0usize; n];
    loop {
        let num_blocks = a.iter().max().unwrap() + 1;
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); num_blocks];
        for (i, &bi) in a.iter().enumerate() {
            blocks[bi].push(i + 1);
        }
        out.push(Partition { n, blocks });
        let mut i = n;
        loop {
            if i <= 1 {
                out.sort_unstable();
                return Ok(out);
            }
            i -= 1;
            let prefix_max = *a[..i].iter().max().unwrap();
            if a[i] <= prefix_max {
                a[i] += 1;
                a[i + 1..].fill(0);
                break;
            }
        }
    }
}

/// Every non-crossing partition of `{1..n}`, canonical, sorted
/// lexicographically on canonical block form. Count is the Catalan number.
///
/// Uses the recursive construction: the block of the least element splits
/// the rest of the ground set into independent sub-problems.
pub fn noncrossing_partitions(n: usize) -> Result<Vec<Partition>> {
    check_size("noncrossing_partitions", n, NONCROSSING_CAP)?;
    let mut out: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut acc: Vec<Vec<usize>> = Vec::new();
    let seed: Vec<usize> = (1..=n).collect();
    nc_rec(vec![seed], &mut acc, &mut out);
    let mut parts: Vec<Partition> = out
        .into_iter()
        .map(|mut blocks| {
            blocks.sort_unstable();
            Partition { n, blocks }
        })
        .collect();
    parts.sort_unstable();
    Ok(parts)
}

fn nc_rec(mut pending: Vec<Vec<usize>>, acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
    let seg = loop {
        match pending.pop() {
            None => {
                out.push(acc.clone());
                return;
            }
            Some(s) if s.is_empty() => continue,
            Some(s) => break s,
        }
    };
    let first = seg[0];
    let rest = &seg[1..];
    for mask in 0u64..(1 << rest.len()) {
        let mut block = vec![first];
        let mut runs: Vec<Vec<usize>> = Vec::new();
        let mut run: Vec<usize> = Vec::new();
        for (i, &x) in rest.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                block.push(x);
                runs.push(std::mem::take(&mut run));
            } else {
                run.push(x);
            }
        }
        runs.push(run);
        let mut next = pending.clone();
        next.extend(runs);
        acc.push(block);
        nc_rec(next, acc, out);
        acc.pop();
    }
}

/// Every interval partition of `{1..n}`, canonical, sorted
/// lexicographically on canonical block form. Count is `2^(n-1)`.
pub fn interval_partitions(n: usize) -> Result<Vec<Partition>> {
    check_size("interval_partitions", n, INTERVAL_CAP)?;
    let mut out: Vec<Partition> = Vec::with_capacity(1 << (n - 1));
    for mask in 0u64..(1 << (n - 1)) {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block: Vec<usize> = Vec::new();
        for x in 1..=n {
            block.push(x);
            // a set bit after position x ends the current interval
            if x == n || (mask >> (x - 1)) & 1 == 1 {
                blocks.push(std::mem::take(&mut block));
            }
        }
        out.push(Partition { n, blocks });
    }
    out.sort_unstable();
    Ok(out)
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        if n == 0 {
            return Err(Error::domain("permutation: n must be positive"));
        }
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::domain("permutation: images must be a bijection"));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The cycle `1 → 2 → … → n → 1`, i.e. `P_{1_n}`.
    pub fn full_cycle(n: usize) -> Permutation {
        Permutation {
            images: (1..=n).map(|i| i % n + 1).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0usize; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Function composition `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "composing permutations of unequal size");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x - 1]).collect(),
        }
    }

    /// Recovers the partition whose blocks are the cycle supports, provided
    /// each cycle visits its support in increasing-then-wrap order and the
    /// resulting partition is non-crossing; `None` otherwise.
    pub fn cycle_partition(&self) -> Option<Partition> {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            // `start` is the least unvisited element, hence the minimum of
            // its cycle if the cycle is in increasing-then-wrap form.
            let mut block = vec![start];
            seen[start] = true;
            let mut prev = start;
            loop {
                let next = self.apply(prev);
                if next == start {
                    break;
                }
                if next < prev || seen[next] {
                    return None;
                }
                seen[next] = true;
                block.push(next);
                prev = next;
            }
            blocks.push(block);
        }
        let partition = Partition { n, blocks };
        partition.is_noncrossing().then_some(partition)
    }
}

impl std::fmt::Display for Partition {
    /// Text form used by the CLI: `[[1,4],[2,3]]`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.blocks.len()))?;
        for b in &self.blocks {
            seq.serialize_element(b)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn new_canonicalizes_and_validates() {
        let a = Partition::new(4, vec![vec![3, 2], vec![4, 1]]).unwrap();
        assert_eq!(a.blocks(), &[vec![1, 4], vec![2, 3]]);
        assert!(Partition::new(3, vec![vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(Partition::new(3, vec![vec![1, 2, 3], vec![]]).is_err());
        assert!(Partition::new(3, vec![vec![1, 2, 4]]).is_err());
    }

    #[test]
    fn all_partitions_counts() {
        assert_eq!(all_partitions(1).unwrap().len(), 1);
        assert_eq!(all_partitions(3).unwrap().len(), 5);
        assert_eq!(all_partitions(4).unwrap().len(), 15);
        assert!(matches!(
            all_partitions(13),
            Err(Error::SizeCap { .. })
        ));
        assert!(all_partitions(0).is_err());
    }

    #[test]
    fn noncrossing_detection() {
        assert!(!p(4, &[&[1, 3], &[2, 4]]).is_noncrossing());
        assert!(Partition::full(4).is_noncrossing());
        assert!(p(4, &[&[1, 4], &[2, 3]]).is_noncrossing());
        assert!(p(5, &[&[1, 3, 5], &[2], &[4]]).is_noncrossing());
        assert!(!p(5, &[&[1, 4], &[2, 5], &[3]]).is_noncrossing());
    }

    #[test]
    fn noncrossing_enumeration_counts_and_order() {
        let nc2 = noncrossing_partitions(2).unwrap();
        assert_eq!(nc2, vec![Partition::singletons(2), Partition::full(2)]);
        assert_eq!(noncrossing_partitions(3).unwrap().len(), 5);
        assert_eq!(noncrossing_partitions(10).unwrap().len(), 16796);
        assert!(noncrossing_partitions(15).is_err());
    }

    #[test]
    fn interval_enumeration() {
        assert_eq!(interval_partitions(1).unwrap(), vec![Partition::full(1)]);
        assert_eq!(interval_partitions(3).unwrap().len(), 4);
        assert_eq!(interval_partitions(5).unwrap().len(), 16);
        let all_intervals = interval_partitions(6).unwrap();
        assert!(all_intervals.iter().all(|q| q.is_interval()));
        assert!(interval_partitions(21).is_err());
    }

    #[test]
    fn refinement_order() {
        let q = p(4, &[&[1, 4], &[2, 3]]);
        assert!(Partition::singletons(4).refines(&q).unwrap());
        assert!(p(3, &[&[1], &[2, 3]]).refines(&Partition::full(3)).unwrap());
        assert!(!p(4, &[&[1, 2], &[3, 4]]).refines(&q).unwrap());
        assert!(p(3, &[&[1], &[2, 3]])
            .refines(&Partition::singletons(4))
            .is_err());
    }

    #[test]
    fn ll_order() {
        let full3 = Partition::full(3);
        assert!(p(3, &[&[1, 3], &[2]]).ll(&full3).unwrap());
        assert!(!p(3, &[&[1, 2], &[3]]).ll(&full3).unwrap());
        let zero4 = Partition::singletons(4);
        assert!(zero4.ll(&zero4).unwrap());
        assert!(!p(4, &[&[1, 2], &[3], &[4]]).ll(&zero4).unwrap());
    }

    #[test]
    fn associated_permutation_cycles() {
        let full = Partition::full(3).associated_permutation();
        assert_eq!((full.apply(1), full.apply(2), full.apply(3)), (2, 3, 1));
        assert_eq!(
            Partition::singletons(4).associated_permutation(),
            Permutation::identity(4)
        );
        let mixed = p(3, &[&[1], &[2, 3]]).associated_permutation();
        assert_eq!((mixed.apply(1), mixed.apply(2), mixed.apply(3)), (1, 3, 2));
    }

    #[test]
    fn cycle_partition_roundtrip_and_failure() {
        assert_eq!(
            Permutation::identity(5).cycle_partition().unwrap(),
            Partition::singletons(5)
        );
        assert_eq!(
            Permutation::full_cycle(3).cycle_partition().unwrap(),
            Partition::full(3)
        );
        let swap = Permutation::new(vec![3, 2, 1]).unwrap();
        assert_eq!(swap.cycle_partition().unwrap(), p(3, &[&[1, 3], &[2]]));
        // decreasing-first cycle 1→3→2→1 is rejected
        let bad = Permutation::new(vec![3, 1, 2]).unwrap();
        assert_eq!(bad.cycle_partition(), None);
    }

    #[test]
    fn kreweras_basics() {
        assert_eq!(
            Partition::full(4).kreweras().unwrap(),
            Partition::singletons(4)
        );
        assert_eq!(
            p(3, &[&[1], &[2, 3]]).kreweras().unwrap(),
            p(3, &[&[1, 3], &[2]])
        );
        assert_eq!(
            p(3, &[&[1, 2], &[3]]).kreweras().unwrap(),
            p(3, &[&[1], &[2, 3]])
        );
        assert!(p(4, &[&[1, 3], &[2, 4]]).kreweras().is_err());
    }

    #[test]
    fn relative_kreweras_basics() {
        let a = p(3, &[&[1], &[2, 3]]);
        assert_eq!(
            a.relative_kreweras(&Partition::full(3)).unwrap(),
            a.kreweras().unwrap()
        );
        assert_eq!(a.relative_kreweras(&a).unwrap(), Partition::singletons(3));
        let q = p(4, &[&[1, 4], &[2, 3]]);
        assert_eq!(
            Partition::singletons(4).relative_kreweras(&q).unwrap(),
            q
        );
        assert!(q.relative_kreweras(&Partition::singletons(4)).is_err());
    }

    #[test]
    fn outer_blocks() {
        assert_eq!(Partition::full(5).outer_profile().unwrap().count, 1);
        let nested = p(4, &[&[1, 4], &[2, 3]]);
        let profile = nested.outer_profile().unwrap();
        assert_eq!(profile.count, 1);
        assert_eq!(profile.outer_blocks, vec![0]);
        assert_eq!(p(4, &[&[1, 2], &[3, 4]]).outer_profile().unwrap().count, 2);
        // block containing 1 is always outer
        for q in noncrossing_partitions(6).unwrap() {
            let memb = q.membership();
            assert!(q
                .outer_profile()
                .unwrap()
                .outer_blocks
                .contains(&memb[1]));
        }
    }

    #[test]
    fn embraces_basics() {
        assert!(embraces(&[1, 4], &[2, 3]));
        assert!(embraces(&[2, 3], &[2, 3]));
        assert!(!embraces(&[1, 2], &[3, 4]));
        assert!(!embraces(&[], &[1]));
    }

    #[test]
    fn coarser_ll_counts() {
        let nested = p(4, &[&[1, 4], &[2, 3]]);
        assert_eq!(nested.count_coarser_ll(1).unwrap(), 1);
        assert_eq!(nested.count_coarser_ll(2).unwrap(), 1);
        assert_eq!(nested.count_coarser_ll(3).unwrap(), 0);
        assert_eq!(p(4, &[&[1, 2], &[3, 4]]).count_coarser_ll(1).unwrap(), 0);
        assert_eq!(Partition::full(6).count_coarser_ll_total().unwrap(), 1);
        assert_eq!(nested.count_coarser_ll_total().unwrap(), 2);
        assert_eq!(
            Partition::singletons(5).count_coarser_ll_total().unwrap(),
            1
        );
    }

    #[test]
    fn parity_join_and_split() {
        let joined = p(2, &[&[1, 2]]).parity_join(&Partition::singletons(2)).unwrap();
        assert_eq!(joined, p(4, &[&[1, 3], &[2], &[4]]));
        assert!(joined.is_noncrossing());

        let crossing = p(2, &[&[1, 2]]).parity_join(&Partition::full(2)).unwrap();
        assert_eq!(crossing, p(4, &[&[1, 3], &[2, 4]]));
        assert!(!crossing.is_noncrossing());

        assert_eq!(
            Partition::singletons(3)
                .parity_join(&Partition::singletons(3))
                .unwrap(),
            Partition::singletons(6)
        );

        let (odd, even) = joined.parity_split().unwrap().unwrap();
        assert_eq!(odd, Partition::full(2));
        assert_eq!(even, Partition::singletons(2));
        assert_eq!(Partition::full(2).parity_split().unwrap(), None);
        assert_eq!(
            Partition::singletons(4).parity_split().unwrap().unwrap(),
            (Partition::singletons(2), Partition::singletons(2))
        );
        assert!(Partition::full(3).parity_split().is_err());
    }

    #[test]
    fn parent_blocks() {
        // interleaving of {13}{2} with its Kreweras complement {12}{3}
        let theta = p(3, &[&[1, 3], &[2]])
            .parity_join(&p(3, &[&[1, 2], &[3]]))
            .unwrap();
        assert_eq!(theta, p(6, &[&[1, 5], &[2, 4], &[3], &[6]]));
        // parent of {3} is its innermost strict embracer {2,4}
        let idx_of = |b: &[usize]| theta.blocks().iter().position(|x| x == b).unwrap();
        assert_eq!(
            theta.parent_block(idx_of(&[3])).unwrap(),
            Some(idx_of(&[2, 4]))
        );
        assert_eq!(
            theta.parent_block(idx_of(&[2, 4])).unwrap(),
            Some(idx_of(&[1, 5]))
        );
        assert_eq!(theta.parent_block(idx_of(&[1, 5])).unwrap(), None);
        assert_eq!(theta.parent_block(idx_of(&[6])).unwrap(), None);
        assert!(theta.parent_block(4).is_err());

        let zero4 = Partition::singletons(2)
            .parity_join(&Partition::singletons(2))
            .unwrap();
        for idx in 0..zero4.num_blocks() {
            assert_eq!(zero4.parent_block(idx).unwrap(), None);
        }
    }

    #[test]
    fn two_outer_blocks() {
        for pi in noncrossing_partitions(5).unwrap() {
            let theta = pi.parity_join(&pi.kreweras().unwrap()).unwrap();
            assert!(theta.has_exactly_two_outer().unwrap());
        }
        let four_outer = Partition::singletons(2)
            .parity_join(&Partition::singletons(2))
            .unwrap();
        assert!(!four_outer.has_exactly_two_outer().unwrap());
        let two_outer = Partition::full(2)
            .parity_join(&Partition::singletons(2))
            .unwrap();
        assert!(two_outer.has_exactly_two_outer().unwrap());
        assert!(Partition::full(4).has_exactly_two_outer().is_err());
    }

    #[test]
    fn unique_pi_examples() {
        assert_eq!(
            unique_pi_for(&Partition::full(2), &Partition::singletons(2)).unwrap(),
            Some(Partition::full(2))
        );
        assert_eq!(
            unique_pi_for(&Partition::singletons(2), &Partition::singletons(2)).unwrap(),
            None
        );
        // σ paired with K(σ) always admits a solution
        for sigma in noncrossing_partitions(5).unwrap() {
            let tau = sigma.kreweras().unwrap();
            let pi = unique_pi_for(&sigma, &tau).unwrap().expect("must exist");
            assert!(sigma.ll(&pi).unwrap());
            assert!(tau.ll(&pi.kreweras().unwrap()).unwrap());
        }
        assert!(unique_pi_for(&Partition::full(2), &Partition::full(3)).is_err());
    }

    #[test]
    fn display_form() {
        assert_eq!(p(4, &[&[1, 4], &[2, 3]]).to_string(), "[[1,4],[2,3]]");
        assert_eq!(Partition::full(1).to_string(), "[[1]]");
    }
}
