//! Deterministic parallel searches over pairs, triples and quadruples.
//!
//! Each search returns the first violating tuple in lexicographic order, so
//! results do not depend on the number of worker threads.

use rayon::prelude::*;

pub fn first_pair(n: usize, bad: impl Fn(usize, usize) -> bool + Sync) -> Option<(usize, usize)> {
    (0..n).into_par_iter().find_map_first(|x| (0..n).find(|&y| bad(x, y)).map(|y| (x, y)))
}

pub fn first_triple(n: usize, bad: impl Fn(usize, usize, usize) -> bool + Sync) -> Option<(usize, usize, usize)> {
    (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
        None
    })
}

pub fn first_quad(
    n: usize,
    bad: impl Fn(usize, usize, usize, usize) -> bool + Sync,
) -> Option<(usize, usize, usize, usize)> {
    (0..n * n).into_par_iter().find_map_first(|xy| {
        let (x, y) = (xy / n, xy % n);
        for z in 0..n {
            for t in 0..n {
                if bad(x, y, z, t) {
                    return Some((x, y, z, t));
                }
            }
        }
        None
    })
}
