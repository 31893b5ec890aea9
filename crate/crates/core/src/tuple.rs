//! Mixed-radix ranking of t-tuples over `0..v`, first coordinate most
//! significant.

use crate::error::{Error, Result};
use crate::params::full_count;

pub fn tuple_rank(x: &[u64], v: u64) -> Result<u64> {
    let full = full_count(v, x.len())?;
    let mut r = 0u64;
    for &s in x {
        if s >= v {
            return Err(Error::SymbolOutOfRange { symbol: s, v });
        }
        r = r * v + s;
    }
    debug_assert!(r < full);
    Ok(r)
}

pub fn tuple_unrank(rank: u64, t: usize, v: u64) -> Result<Vec<u64>> {
    let full = full_count(v, t)?;
    if rank >= full {
        return Err(Error::RankOutOfRange { rank, max: full });
    }
    let mut out = vec![0u64; t];
    unrank_into(rank, v, &mut out);
    Ok(out)
}

/// Unchecked unrank into a caller buffer; `rank < v^out.len()` is assumed.
pub(crate) fn unrank_into<S: TryFrom<u64> + Copy>(mut rank: u64, v: u64, out: &mut [S])
where
    <S as TryFrom<u64>>::Error: std::fmt::Debug,
{
    for slot in out.iter_mut().rev() {
        *slot = S::try_from(rank % v).expect("symbol fits");
        rank /= v;
    }
}
