//! Exhaustive search over all `p^(2p)` pairs of tables.
//!
//! This is the oracle for the linear solver and shares no code with it: each
//! candidate pair is checked directly against the equation with raw modular
//! arithmetic.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::table::FnTable;

/// Largest modulus the exhaustive search accepts (`5^10` pairs).
pub const BRUTE_FORCE_MAX_P: u32 = 5;

/// The table whose values are the base-`p` digits of `index`, least significant first.
fn table_at(p: u32, mut index: u64) -> Vec<u32> {
    (0..p)
        .map(|_| {
            let digit = (index % u64::from(p)) as u32;
            index /= u64::from(p);
            digit
        })
        .collect()
}

fn solutions_for_f(p: u32, f: &[u32]) -> Vec<Vec<u32>> {
    let pu = p as usize;
    let md = |v: u32| v % p;
    // rhs[x][y] = x f(y) + y f(x)
    let rhs: Vec<u32> = (0..p)
        .flat_map(|x| (0..p).map(move |y| (x, y)))
        .map(|(x, y)| md(x * f[y as usize] + y * f[x as usize]))
        .collect();

    let mut found = Vec::new();
    let mut g = vec![0u32; pu];
    loop {
        let ok = (0..p).all(|x| {
            (0..p).all(|y| {
                let lhs = md(g[md(x + y) as usize] + 2 * p - g[x as usize] - g[y as usize]);
                lhs == rhs[(x * p + y) as usize]
            })
        });
        if ok {
            found.push(g.clone());
        }
        // next g, first coordinate fastest
        let mut i = 0;
        loop {
            if i == pu {
                return found;
            }
            g[i] += 1;
            if g[i] < p {
                break;
            }
            g[i] = 0;
            i += 1;
        }
    }
}

/// Every `(f, g)` solving the equation over `Z_p`, sorted lexicographically.
///
/// The search over `f` is split across the current rayon pool; the result
/// does not depend on the number of workers.
pub fn brute_force_solutions(field: PrimeField) -> Result<Vec<(FnTable, FnTable)>> {
    let p = field.p();
    if p > BRUTE_FORCE_MAX_P {
        return Err(Error::BruteForceTooLarge {
            p,
            max: BRUTE_FORCE_MAX_P,
        });
    }
    let tables = u64::from(p).pow(p);
    let mut all: Vec<(FnTable, FnTable)> = (0..tables)
        .into_par_iter()
        .flat_map_iter(|index| {
            let f = table_at(p, index);
            solutions_for_f(p, &f).into_iter().map(move |g| {
                (
                    FnTable::new(field, f.clone()).expect("digits are residues"),
                    FnTable::new(field, g).expect("digits are residues"),
                )
            })
        })
        .collect();
    all.sort();
    Ok(all)
}

/// Every `f` with `x f(y) + y f(x) = 0` for all `x, y`, by exhaustive search.
pub fn brute_force_d1_solutions(field: PrimeField) -> Result<Vec<FnTable>> {
    let p = field.p();
    if p > BRUTE_FORCE_MAX_P {
        return Err(Error::BruteForceTooLarge {
            p,
            max: BRUTE_FORCE_MAX_P,
        });
    }
    let mut all: Vec<FnTable> = (0..u64::from(p).pow(p))
        .map(|index| table_at(p, index))
        .filter(|f| {
            (0..p).all(|x| (0..p).all(|y| (x * f[y as usize] + y * f[x as usize]) % p == 0))
        })
        .map(|f| FnTable::new(field, f).expect("digits are residues"))
        .collect();
    all.sort();
    Ok(all)
}
