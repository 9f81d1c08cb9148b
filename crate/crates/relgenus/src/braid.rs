use crate::error::{Error, Result};
use crate::seifert::SeifertMatrix;
use std::fmt;

/// A braid word whose closure is a knot.
///
/// Letters are nonzero integers `e` with `1 ≤ |e| < strands`; the sign of `e`
/// is the crossing sign of the Artin generator σ_|e|. Validation rejects
/// closures with more than one component, so every `BraidWord` presents a
/// genuine knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::BadBraid("strand count must be positive".into()));
        }
        for &e in &letters {
            if e == 0 {
                return Err(Error::BadBraid("letter 0 is not a generator".into()));
            }
            if e.unsigned_abs() >= strands {
                return Err(Error::BadBraid(format!(
                    "letter {e} out of range for {strands} strands (need 1 ≤ |e| ≤ {})",
                    strands - 1
                )));
            }
        }
        let w = BraidWord { strands, letters };
        if !w.closure_is_knot() {
            return Err(Error::BadBraid(
                "closure is a link with more than one component, not a knot".into(),
            ));
        }
        Ok(w)
    }

    pub fn unknot() -> Self {
        BraidWord { strands: 1, letters: vec![] }
    }

    /// The (2, q) torus knot as the 2-strand braid σ₁^q; |q| must be odd.
    pub fn torus_2(q: i32) -> Result<Self> {
        if q.rem_euclid(2) == 0 {
            return Err(Error::BadBraid(format!(
                "T(2,{q}) is a link, not a knot (q must be odd)"
            )));
        }
        if q == 1 || q == -1 {
            return Ok(Self::unknot());
        }
        Self::new(2, vec![q.signum(); q.unsigned_abs() as usize])
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&e| e.signum() as i64).sum()
    }

    /// Mirror image: all crossing signs reversed. The closure permutation is
    /// unchanged, so the result is again a knot.
    pub fn mirror(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|&e| -e).collect(),
        }
    }

    fn closure_is_knot(&self) -> bool {
        let n = self.strands as usize;
        // positions[i] = strand currently occupying position i, reading down the braid
        let mut positions: Vec<usize> = (0..n).collect();
        for &e in &self.letters {
            let c = e.unsigned_abs() as usize;
            positions.swap(c - 1, c);
        }
        // the closure has one component iff the permutation is an n-cycle
        let mut seen = 1usize;
        let mut at = positions[0];
        while at != 0 {
            at = positions[at];
            seen += 1;
        }
        seen == n
    }

    /// Genus of the fence Seifert surface, an upper bound for both the Seifert
    /// genus and the smooth 4-genus: (#letters − strands + 1)/2.
    pub fn seifert_genus_bound(&self) -> u32 {
        ((self.letters.len() + 1 - self.strands as usize) / 2) as u32
    }

    /// Seifert matrix of the fence surface built from the closure: one disk per
    /// strand, one half-twisted band per letter.
    ///
    /// Basis loops run through consecutive bands in the same column. The sign
    /// convention is pinned so that σ(right-handed trefoil) = −2 and is locked
    /// by regression tests; see `seifert_matrix_convention` below.
    pub fn seifert_matrix(&self) -> SeifertMatrix {
        let n = self.strands as usize;
        // bricks per column: (position in word, crossing sign)
        let mut cols: Vec<Vec<(usize, i64)>> = vec![vec![]; n.saturating_sub(1)];
        for (pos, &e) in self.letters.iter().enumerate() {
            cols[e.unsigned_abs() as usize - 1].push((pos, e.signum() as i64));
        }
        // one basis loop per consecutive brick pair within a column
        let mut loops: Vec<(usize, usize)> = vec![];
        for (c, bricks) in cols.iter().enumerate() {
            for i in 0..bricks.len().saturating_sub(1) {
                loops.push((c, i));
            }
        }
        let m = loops.len();
        let mut a = vec![vec![0i64; m]; m];
        for (ix, &(c1, i1)) in loops.iter().enumerate() {
            let (x_top, e_top) = cols[c1][i1];
            let (x_bot, e_bot) = cols[c1][i1 + 1];
            // self-linking: ∓1 when both bands twist the same way, else 0
            a[ix][ix] = -(e_top + e_bot) / 2;
            for (jx, &(c2, i2)) in loops.iter().enumerate() {
                if jx == ix {
                    continue;
                }
                if c1 == c2 {
                    // same column: only loops sharing a brick link, and the
                    // asymmetry is carried by the shared crossing's sign
                    if i2 == i1 + 1 {
                        let eps = e_bot;
                        a[ix][jx] = (eps + 1) / 2;
                        a[jx][ix] = (eps - 1) / 2;
                    }
                } else if c2 == c1 + 1 {
                    // adjacent columns: only interleaved spans link, with
                    // orientation decided by which loop starts higher
                    let (y_top, _) = cols[c2][i2];
                    let (y_bot, _) = cols[c2][i2 + 1];
                    if x_top < y_top && y_top < x_bot && x_bot < y_bot {
                        a[ix][jx] = 1;
                    } else if y_top < x_top && x_top < y_bot && y_bot < x_bot {
                        a[ix][jx] = -1;
                    }
                }
            }
        }
        SeifertMatrix::new(a).expect("fence construction always yields a valid Seifert matrix")
    }
}

impl fmt::Display for BraidWord {
    /// Canonical form matching the CLI input grammar: `braid(2; 1 1 1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "braid({};", self.strands)?;
        for e in &self.letters {
            write!(f, " {e}")?;
        }
        write!(f, ")")
    }
}
