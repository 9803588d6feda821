//! Cached list of the modes that survive dealiasing.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::grid::Grid;

/// Storage indices, wavenumbers and `|k|²` of every mode with `|k| ≤ N/3`, in storage order.
pub(crate) struct Retained {
    pub idx: Vec<usize>,
    pub k: Vec<[f64; 3]>,
    pub k2: Vec<u32>,
}

static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Retained>>>> = OnceLock::new();

pub(crate) fn retained(grid: Grid) -> Arc<Retained> {
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut cache = cache.lock().unwrap_or_else(|e| e.into_inner());
    cache
        .entry(grid.n())
        .or_insert_with(|| {
            let mut r = Retained { idx: Vec::new(), k: Vec::new(), k2: Vec::new() };
            grid.for_each_mode(|idx, k| {
                if grid.is_retained(k) {
                    r.idx.push(idx);
                    r.k.push([k[0] as f64, k[1] as f64, k[2] as f64]);
                    r.k2.push((k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as u32);
                }
            });
            Arc::new(r)
        })
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_direct_enumeration() {
        let g = Grid::new(32).unwrap();
        let r = retained(g);
        let direct: Vec<usize> = (0..g.len()).filter(|&i| g.is_retained(g.mode(i))).collect();
        assert_eq!(r.idx, direct);
        for (j, &i) in r.idx.iter().enumerate() {
            let k = g.mode(i);
            assert_eq!(r.k[j], [k[0] as f64, k[1] as f64, k[2] as f64]);
        }
    }
}
