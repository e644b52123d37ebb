//! Signed Gauss codes of virtual knots.
//!
//! A code is the cyclic word of crossing passes read along the knot:
//! `O3+` means "pass over crossing 3, which is positive". Virtual crossings
//! are never recorded; the invariants computed downstream do not depend on
//! them. Only single-component codes (knots) are accepted.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strand {
    Over,
    Under,
}

impl Strand {
    pub fn flipped(self) -> Strand {
        match self {
            Strand::Over => Strand::Under,
            Strand::Under => Strand::Over,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// One passage through a classical crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussPass {
    pub id: u32,
    pub strand: Strand,
    pub sign: Sign,
}

impl fmt::Display for GaussPass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let role = match self.strand {
            Strand::Over => 'O',
            Strand::Under => 'U',
        };
        let sign = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "{role}{}{sign}", self.id)
    }
}

/// A validated signed Gauss code. The empty code is the unknot diagram.
///
/// Crossing ids are kept exactly as parsed; [`GaussCode::canonicalize`]
/// renumbers them in first-appearance order when a stable form is needed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussCode {
    passes: Vec<GaussPass>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaussParseError {
    #[error("malformed token {token:?} at byte {at}")]
    MalformedToken { at: usize, token: String },
    #[error("crossing {id} appears {count} times, expected 2")]
    WrongCount { id: u32, count: usize },
    #[error("crossing {id} appears twice with the same over/under role")]
    SameRole { id: u32 },
    #[error("crossing {id} has different signs on its two passes")]
    SignMismatch { id: u32 },
    #[error("multi-component codes are not supported")]
    MultiComponent,
}

impl GaussCode {
    pub fn unknot() -> Self {
        GaussCode::default()
    }

    /// Validates the crossing pairing: every id exactly twice, once over and
    /// once under, with one sign.
    pub fn from_passes(passes: Vec<GaussPass>) -> Result<Self, GaussParseError> {
        let mut seen: Vec<(u32, GaussPass)> = Vec::new();
        for &pass in &passes {
            match seen.iter_mut().find(|(id, _)| *id == pass.id) {
                None => seen.push((pass.id, pass)),
                Some((id, first)) => {
                    if first.strand == pass.strand {
                        return Err(GaussParseError::SameRole { id: *id });
                    }
                    if first.sign != pass.sign {
                        return Err(GaussParseError::SignMismatch { id: *id });
                    }
                }
            }
        }
        for (id, _) in &seen {
            let count = passes.iter().filter(|p| p.id == *id).count();
            if count != 2 {
                return Err(GaussParseError::WrongCount { id: *id, count });
            }
        }
        Ok(GaussCode { passes })
    }

    pub fn parse(text: &str) -> Result<Self, GaussParseError> {
        if text.contains(',') || text.contains(';') {
            return Err(GaussParseError::MultiComponent);
        }
        let bytes = text.as_bytes();
        let mut passes = Vec::new();
        let mut i = 0usize;
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            let strand = match bytes[i] {
                b'O' => Strand::Over,
                b'U' => Strand::Under,
                _ => return Err(malformed(text, start)),
            };
            i += 1;
            let digits_start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let id: u32 = text[digits_start..i].parse().map_err(|_| malformed(text, start))?;
            if id == 0 {
                return Err(malformed(text, start));
            }
            let sign = match bytes.get(i) {
                Some(b'+') => Sign::Plus,
                Some(b'-') => Sign::Minus,
                _ => return Err(malformed(text, start)),
            };
            i += 1;
            passes.push(GaussPass { id, strand, sign });
        }
        GaussCode::from_passes(passes)
    }

    pub fn passes(&self) -> &[GaussPass] {
        &self.passes
    }

    /// Number of classical crossings.
    pub fn crossings(&self) -> usize {
        self.passes.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.passes.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        // each crossing contributes its sign once; passes list it twice
        self.passes.iter().map(|p| p.sign.value()).sum::<i64>() / 2
    }

    /// Swaps every over/under role and negates every sign.
    pub fn mirror(&self) -> Self {
        let passes = self
            .passes
            .iter()
            .map(|p| GaussPass { id: p.id, strand: p.strand.flipped(), sign: p.sign.flipped() })
            .collect();
        GaussCode { passes }
    }

    /// Reverses the traversal order; roles and signs are untouched.
    pub fn reverse(&self) -> Self {
        let passes = self.passes.iter().rev().copied().collect();
        GaussCode { passes }
    }

    /// Renumbers crossings in first-appearance order starting at 1.
    pub fn canonicalize(&self) -> Self {
        let mut order: Vec<u32> = Vec::new();
        let passes = self
            .passes
            .iter()
            .map(|p| {
                let id = match order.iter().position(|&seen| seen == p.id) {
                    Some(k) => k as u32 + 1,
                    None => {
                        order.push(p.id);
                        order.len() as u32
                    }
                };
                GaussPass { id, ..*p }
            })
            .collect();
        GaussCode { passes }
    }

    fn fresh_id(&self) -> u32 {
        self.passes.iter().map(|p| p.id).max().unwrap_or(0) + 1
    }

    /// Inserts a kink (R1 move) at `position`: two adjacent passes of a fresh
    /// crossing with the given sign. Chirality picks which pass comes first.
    pub fn insert_r1(&self, position: usize, sign: Sign, chirality: KinkChirality) -> Self {
        assert!(position <= self.passes.len());
        let id = self.fresh_id();
        let (a, b) = match chirality {
            KinkChirality::OverFirst => (Strand::Over, Strand::Under),
            KinkChirality::UnderFirst => (Strand::Under, Strand::Over),
        };
        let mut passes = self.passes.clone();
        passes.splice(
            position..position,
            [GaussPass { id, strand: a, sign }, GaussPass { id, strand: b, sign }],
        );
        GaussCode { passes }
    }

    /// Inserts an R2 pair: two fresh crossings of opposite sign whose four
    /// passes straddle the strand segments at `pos_a` and `pos_b`.
    pub fn insert_r2(&self, pos_a: usize, pos_b: usize, variant: R2Variant) -> Self {
        assert!(pos_a <= pos_b && pos_b <= self.passes.len());
        let i = self.fresh_id();
        let j = i + 1;
        let (first, second) = match variant {
            R2Variant::OverFirst => (Strand::Over, Strand::Under),
            R2Variant::UnderFirst => (Strand::Under, Strand::Over),
        };
        let mut passes = self.passes.clone();
        passes.splice(
            pos_b..pos_b,
            [
                GaussPass { id: j, strand: second, sign: Sign::Minus },
                GaussPass { id: i, strand: second, sign: Sign::Plus },
            ],
        );
        passes.splice(
            pos_a..pos_a,
            [
                GaussPass { id: i, strand: first, sign: Sign::Plus },
                GaussPass { id: j, strand: first, sign: Sign::Minus },
            ],
        );
        GaussCode { passes }
    }
}

fn malformed(text: &str, at: usize) -> GaussParseError {
    let token: String = text[at..].chars().take_while(|c| !c.is_whitespace()).take(8).collect();
    GaussParseError::MalformedToken { at, token }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.passes {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for GaussCode {
    type Err = GaussParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GaussCode::parse(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KinkChirality {
    OverFirst,
    UnderFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum R2Variant {
    OverFirst,
    UnderFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    R1,
    R2,
    R3,
    Mirror,
    Reverse,
}

/// Two codes related by the named move; produced by the fixture generators.
#[derive(Clone, Debug)]
pub struct MovePair {
    pub before: GaussCode,
    pub after: GaussCode,
    pub move_kind: MoveKind,
}

/// Hand-derived R3 pairs: each pair of braid closures differs by one braid
/// relation, i.e. one R3 move. The third pair exercises mixed signs.
pub fn r3_fixture_pairs() -> Vec<MovePair> {
    let pairs = [
        ("O1+O2+U2+U3+O4+U1+O3+U4+", "O2+O3+U1+U2+O4+O1+U3+U4+"),
        ("O1+O2+U4+U1+O3+O4+U2+U3+", "O2+O3+U4+O1+U3+O4+U1+U2+"),
        ("U1-O2+U2+U3+O4+O1-O3+U4+", "O2+U3-U1+U2+O4+O1+O3-U4+"),
    ];
    pairs
        .iter()
        .map(|(before, after)| MovePair {
            before: GaussCode::parse(before).expect("fixture parses"),
            after: GaussCode::parse(after).expect("fixture parses"),
            move_kind: MoveKind::R3,
        })
        .collect()
}
