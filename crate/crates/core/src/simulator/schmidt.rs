use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::state::{QubitLabel, SignState};
use super::SimError;

/// Largest side of a cut.
pub const MAX_CUT_SIDE: usize = 13;

/// Sign patterns up to an overall sign, deduplicated in first-seen order.
fn distinct_up_to_sign(rows: impl Iterator<Item = Vec<bool>>) -> Vec<Vec<bool>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mut row in rows {
        if row.first() == Some(&true) {
            row.iter_mut().for_each(|b| *b = !*b);
        }
        if seen.insert(row.clone()) {
            out.push(row);
        }
    }
    out
}

/// Rank of a `+-1` matrix (`true` = -1) by fraction-free elimination.
pub(crate) fn sign_matrix_rank(rows: &[Vec<bool>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&b| if b { -BigInt::one() } else { BigInt::one() })
                .collect()
        })
        .collect();
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..n_cols {
        let Some(p) = (rank..n_rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..n_rows {
            for c in col + 1..n_cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == n_rows {
            break;
        }
    }
    rank
}

/// `log2` of the Schmidt rank of `s` between `side` and the other qubits.
pub fn schmidt_rank_log2(s: &SignState, side: &[QubitLabel]) -> Result<u32, SimError> {
    let left: Vec<usize> = side
        .iter()
        .map(|&l| s.index_of(l).ok_or(SimError::NotPresent(l)))
        .collect::<Result<_, _>>()?;
    let right: Vec<usize> = (0..s.qubit_count()).filter(|q| !left.contains(q)).collect();
    if left.len() > MAX_CUT_SIDE || right.len() > MAX_CUT_SIDE {
        return Err(SimError::TooManyQubits {
            qubits: left.len().max(right.len()),
            max: MAX_CUT_SIDE,
        });
    }
    let spread = |bits: u64, qubits: &[usize]| {
        qubits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &q)| acc | (((bits >> i) & 1) << q))
    };
    let phase = s.phase();
    let rows = distinct_up_to_sign((0..1u64 << left.len()).map(|x| {
        let base = spread(x, &left);
        (0..1u64 << right.len())
            .map(|y| phase.eval(base | spread(y, &right)))
            .collect()
    }));
    let n_cols = 1usize << right.len();
    let cols = distinct_up_to_sign((0..n_cols).map(|c| rows.iter().map(|r| r[c]).collect()));
    let rank = sign_matrix_rank(&cols);
    if !rank.is_power_of_two() {
        return Err(SimError::RankNotPowerOfTwo(rank));
    }
    Ok(rank.trailing_zeros())
}
