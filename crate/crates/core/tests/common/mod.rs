//! Independent reference implementations used as test oracles. None of these
//! call into the elimination or rewriting code they check, and they use
//! `num` big integers rather than the library's rational type.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rcrn_core::{ReactionNetwork, SymbolicPolynomial};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Textbook RREF with physical row swaps and a different pivot rule: the
/// remaining row with the smallest absolute value in the column.
pub fn reference_rref(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
    let n = m.len();
    let mut lead = 0;
    for c in 0..cols {
        if lead == n {
            break;
        }
        let Some(p) = (lead..n)
            .filter(|&i| !m[i][c].is_zero())
            .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()))
        else {
            continue;
        };
        m.swap(lead, p);
        let inv = m[lead][c].recip();
        for j in 0..cols {
            m[lead][j] = &m[lead][j] * &inv;
        }
        for i in 0..n {
            if i != lead && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[lead][j];
                    m[i][j] -= d;
                }
            }
        }
        lead += 1;
    }
    m
}

pub fn to_strings(m: &[Vec<BigRational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect()
}

/// Rank by fraction-free (Bareiss) elimination over the integers.
pub fn bareiss_rank(rows: &[Vec<i64>], cols: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let n = m.len();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..n {
            for j in c + 1..cols {
                let v = &m[i][j] * &m[rank][c] - &m[i][c] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Dense elimination mirroring the graph rewriting: columns in order, pivot
/// = lowest unused row nonzero in the column, pivot row left unscaled, every
/// other row `i` gets `row_i -= (a_ic / a_pc) * row_p`. Returns the pivot row
/// (or `None`) and the matrix after each column.
pub fn unnormalised_elimination(
    rows: &[Vec<i64>],
    cols: usize,
) -> Vec<(Option<usize>, Vec<Vec<BigRational>>)> {
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
    let n = m.len();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    for c in 0..cols {
        let p = (0..n).find(|&i| !used[i] && !m[i][c].is_zero());
        if let Some(p) = p {
            used[p] = true;
            for i in 0..n {
                if i != p && !m[i][c].is_zero() {
                    let mult = -(&m[i][c] / &m[p][c]);
                    for j in 0..cols {
                        let d = &m[p][j] * &mult;
                        m[i][j] += d;
                    }
                }
            }
        }
        out.push((p, m.clone()));
    }
    out
}

/// `(rate symbol, species exponents) -> coefficient` for each species,
/// expanded directly from mass-action kinetics: the forward direction of
/// reaction `i` (symbol `2i`) fires at `k * x^reactant` and moves each
/// species by `product - reactant`; the backward one (symbol `2i+1`) the
/// other way round.
pub type TermMap = BTreeMap<(usize, Vec<u32>), i64>;

pub fn mass_action_oracle(net: &ReactionNetwork) -> Vec<TermMap> {
    let n = net.num_species();
    let mut out = vec![TermMap::new(); n];
    for (i, rx) in net.reactions().iter().enumerate() {
        let react: Vec<u32> = (0..n).map(|s| rx.reactant.coefficient(rcrn_core::SpeciesId(s))).collect();
        let prod: Vec<u32> = (0..n).map(|s| rx.product.coefficient(rcrn_core::SpeciesId(s))).collect();
        for (sym, src, dst) in [(2 * i, &react, &prod), (2 * i + 1, &prod, &react)] {
            for s in 0..n {
                let delta = dst[s] as i64 - src[s] as i64;
                if delta != 0 {
                    *out[s].entry((sym, src.clone())).or_insert(0) += delta;
                }
            }
        }
        for map in out.iter_mut() {
            map.retain(|_, v| *v != 0);
        }
    }
    out
}

/// Converts a library polynomial into the oracle's term map. Panics if a
/// term is not of the form `integer * k * monomial`.
pub fn term_map(p: &SymbolicPolynomial, n: usize, symbols: usize) -> TermMap {
    p.terms()
        .map(|(m, c)| {
            let rates: Vec<usize> = (0..symbols).filter(|&k| m.rate_exponent(k) > 0).collect();
            assert_eq!(rates.len(), 1, "each term carries one rate constant");
            assert_eq!(m.rate_exponent(rates[0]), 1);
            assert!(c.is_integer());
            let exps = (0..n).map(|s| m.species_exponent(s)).collect();
            let coeff: i64 = c.to_integer().try_into().expect("small coefficient");
            ((rates[0], exps), coeff)
        })
        .collect()
}
