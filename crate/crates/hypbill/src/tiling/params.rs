use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of a regular tiling: `p`-gons, `q` of them around each vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TilingParams {
    pub p: u32,
    pub q: u32,
}

impl TilingParams {
    /// Validates hyperbolicity, `1/p + 1/q < 1/2`, i.e. `2(p + q) < pq`.
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p < 3 || q < 3 {
            return Err(Error::Parameter(format!(
                "p and q must both be at least 3 (got p = {p}, q = {q})"
            )));
        }
        if p > 64 || q > 64 {
            return Err(Error::Parameter(format!(
                "p and q are limited to 64 (got p = {p}, q = {q})"
            )));
        }
        if 2 * (p + q) >= p * q {
            return Err(Error::Parameter(format!(
                "({p},{q}) is not hyperbolic: 1/{p} + 1/{q} >= 1/2"
            )));
        }
        Ok(TilingParams { p, q })
    }

    /// The dual tiling swaps the roles of tiles and vertices.
    pub fn dual(self) -> Self {
        TilingParams {
            p: self.q,
            q: self.p,
        }
    }

    pub fn q_even(self) -> bool {
        self.q % 2 == 0
    }

    /// Extra layers needed beyond a tile layer so that every vertex of that
    /// layer, and every face around those vertices, has been closed.
    pub fn margin(self) -> u32 {
        self.q.div_ceil(2) + 1
    }
}

impl std::fmt::Display for TilingParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}
