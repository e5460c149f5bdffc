//! Process-lifetime memo of the partition lattices reused by series
//! transforms. The fill is idempotent, so concurrent initialization is
//! harmless: whichever thread computes first, every reader sees the same
//! deterministic enumeration.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::partitions::{self, Partition};
use crate::Result;

type Table = Mutex<HashMap<usize, Arc<Vec<Partition>>>>;
type PairTable = Mutex<HashMap<usize, Arc<Vec<(Partition, Partition)>>>>;

fn nc_table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn pair_table() -> &'static PairTable {
    static TABLE: OnceLock<PairTable> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn interval_table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `NC(n)` in the deterministic enumeration order.
pub(crate) fn noncrossing(n: usize) -> Result<Arc<Vec<Partition>>> {
    if let Some(hit) = nc_table().lock().unwrap().get(&n) {
        return Ok(Arc::clone(hit));
    }
    let computed = Arc::new(partitions::noncrossing_partitions(n)?);
    let mut table = nc_table().lock().unwrap();
    Ok(Arc::clone(
        table.entry(n).or_insert(computed),
    ))
}

/// `NC(n)` paired with Kreweras complements, `(π, K(π))`.
pub(crate) fn noncrossing_with_complements(n: usize) -> Result<Arc<Vec<(Partition, Partition)>>> {
    if let Some(hit) = pair_table().lock().unwrap().get(&n) {
        return Ok(Arc::clone(hit));
    }
    let base = noncrossing(n)?;
    let mut pairs = Vec::with_capacity(base.len());
    for pi in base.iter() {
        pairs.push((pi.clone(), pi.kreweras()?));
    }
    let computed = Arc::new(pairs);
    let mut table = pair_table().lock().unwrap();
    Ok(Arc::clone(table.entry(n).or_insert(computed)))
}

/// `Int(n)` in the deterministic enumeration order.
pub(crate) fn intervals(n: usize) -> Result<Arc<Vec<Partition>>> {
    if let Some(hit) = interval_table().lock().unwrap().get(&n) {
        return Ok(Arc::clone(hit));
    }
    let computed = Arc::new(partitions::interval_partitions(n)?);
    let mut table = interval_table().lock().unwrap();
    Ok(Arc::clone(table.entry(n).or_insert(computed)))
}
