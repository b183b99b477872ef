use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Geometry {
    Thick { q: u32 },
    Thin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    AtLeast,
}

/// Parameters of one family member: i-objects versus j-objects, adjacent
/// when their intersection has dimension (thick) or size (thin) exactly k,
/// or at least k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilySpec {
    pub geometry: Geometry,
    pub n: usize,
    pub i: i32,
    pub j: i32,
    pub k: i32,
    pub mode: Mode,
}

/// Which symmetries were applied to bring a spec into normal form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFlags {
    pub swapped: bool,
    pub dualized: bool,
}

impl FamilySpec {
    pub fn thick(q: u32, n: usize, i: i32, j: i32, k: i32, mode: Mode) -> FamilySpec {
        FamilySpec {
            geometry: Geometry::Thick { q },
            n,
            i,
            j,
            k,
            mode,
        }
    }

    pub fn thin(n: usize, i: i32, j: i32, k: i32, mode: Mode) -> FamilySpec {
        FamilySpec {
            geometry: Geometry::Thin,
            n,
            i,
            j,
            k,
            mode,
        }
    }

    pub fn q(&self) -> Option<u32> {
        match self.geometry {
            Geometry::Thick { q } => Some(q),
            Geometry::Thin => None,
        }
    }

    pub fn is_thin(&self) -> bool {
        self.geometry == Geometry::Thin
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, top) = match self.geometry {
            Geometry::Thick { q } => {
                crate::field::FieldSpec::new(q)?;
                (-1, self.n as i32 - 1)
            }
            Geometry::Thin => (0, self.n as i32 - 1),
        };
        let ok = lo <= self.k
            && self.k <= self.i.min(self.j)
            && self.i.max(self.j) <= top
            && self.n < 64;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!("{self}")))
        }
    }

    pub fn swapped(&self) -> FamilySpec {
        FamilySpec {
            i: self.j,
            j: self.i,
            ..*self
        }
    }

    /// Image under a polarity of the thick ambient space. Intersection
    /// dimension transforms monotonically, so the mode is preserved.
    pub fn dual(&self) -> FamilySpec {
        let n = self.n as i32;
        FamilySpec {
            i: n - 1 - self.j,
            j: n - 1 - self.i,
            k: n - 1 + self.k - self.i - self.j,
            ..*self
        }
    }

    /// Canonical representative. Thick: i ≤ j, and specs with
    /// i + j > n − 1 are dualized. Thin exact: each side of size > n/2 is
    /// complemented, and for j = n/2 the smaller of k and i − k is kept.
    /// At-least with k = min(i, j) is recorded as exact.
    pub fn normalize(&self) -> (FamilySpec, NormalFlags) {
        let mut s = *self;
        let mut flags = NormalFlags::default();
        if s.i > s.j {
            s = s.swapped();
            flags.swapped = !flags.swapped;
        }
        if s.mode == Mode::AtLeast && s.k == s.i {
            s.mode = Mode::Exact;
        }
        match s.geometry {
            Geometry::Thick { .. } => {
                if s.i + s.j > s.n as i32 - 1 {
                    s = s.dual();
                    flags.dualized = true;
                }
                if s.i > s.j {
                    s = s.swapped();
                    flags.swapped = !flags.swapped;
                }
            }
            Geometry::Thin if s.mode == Mode::Exact => {
                let n = s.n as i32;
                loop {
                    if 2 * s.j > n {
                        s = FamilySpec { j: n - s.j, k: s.i - s.k, ..s };
                        flags.dualized = !flags.dualized;
                    } else if 2 * s.i > n {
                        s = FamilySpec { i: n - s.i, k: s.j - s.k, ..s };
                        flags.dualized = !flags.dualized;
                    } else if s.i > s.j {
                        s = s.swapped();
                        flags.swapped = !flags.swapped;
                    } else if 2 * s.j == n && 2 * s.k > s.i {
                        s.k = s.i - s.k;
                        flags.dualized = !flags.dualized;
                    } else {
                        break;
                    }
                }
            }
            Geometry::Thin => {}
        }
        (s, flags)
    }

    /// Whether a normalized thin spec lies in the range where the graph
    /// determines its parameters (i, j ≤ n/2, 1 ≤ i, k < j, with the
    /// extra bound on k when j = n/2; at-least additionally needs k ≠ 0).
    pub fn in_thin_scope(&self) -> bool {
        let n = self.n as i32;
        let (i, j, k) = (self.i, self.j, self.k);
        if !self.is_thin() || i < 1 || i > j || 2 * j > n || k < 0 || k >= j || k > i {
            return false;
        }
        match self.mode {
            Mode::Exact => 2 * j != n || 2 * k <= i,
            Mode::AtLeast => k != 0 && (2 * j != n || 2 * k <= i + 1),
        }
    }

    /// Metadata line used in graph files.
    pub fn meta_line(&self) -> String {
        format!("# spec {self}")
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.geometry {
            Geometry::Thick { q } => write!(f, "geom=thick q={q}")?,
            Geometry::Thin => write!(f, "geom=thin")?,
        }
        let mode = match self.mode {
            Mode::Exact => "exact",
            Mode::AtLeast => "at-least",
        };
        write!(
            f,
            " n={} i={} j={} k={} mode={}",
            self.n, self.i, self.j, self.k, mode
        )
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "exact" => Ok(Mode::Exact),
            "at-least" | "atleast" | "ge" => Ok(Mode::AtLeast),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses the `key=value` form produced by `Display`.
    fn from_str(s: &str) -> Result<FamilySpec> {
        let mut geom = None;
        let mut q = None;
        let (mut n, mut i, mut j, mut k, mut mode) = (None, None, None, None, None);
        for tok in s.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad token {tok:?}")))?;
            let int = || {
                val.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad integer {val:?}")))
            };
            match key {
                "geom" => geom = Some(val.to_string()),
                "q" => q = Some(int()? as u32),
                "n" => n = Some(int()? as usize),
                "i" => i = Some(int()? as i32),
                "j" => j = Some(int()? as i32),
                "k" => k = Some(int()? as i32),
                "mode" => mode = Some(val.parse()?),
                _ => return Err(Error::Parse(format!("unknown key {key:?}"))),
            }
        }
        let missing = |name: &str| Error::Parse(format!("missing {name}"));
        let geometry = match geom.as_deref() {
            Some("thick") => Geometry::Thick {
                q: q.ok_or_else(|| missing("q"))?,
            },
            Some("thin") => Geometry::Thin,
            _ => return Err(missing("geom")),
        };
        Ok(FamilySpec {
            geometry,
            n: n.ok_or_else(|| missing("n"))?,
            i: i.ok_or_else(|| missing("i"))?,
            j: j.ok_or_else(|| missing("j"))?,
            k: k.ok_or_else(|| missing("k"))?,
            mode: mode.ok_or_else(|| missing("mode"))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trip() {
        let s = FamilySpec::thick(3, 4, 1, 2, 0, Mode::AtLeast);
        assert_eq!(s.to_string().parse::<FamilySpec>().unwrap(), s);
        let t = FamilySpec::thin(10, 3, 3, 1, Mode::Exact);
        assert_eq!(t.to_string().parse::<FamilySpec>().unwrap(), t);
    }

    #[test]
    fn validation() {
        assert!(FamilySpec::thick(2, 3, 1, 1, -1, Mode::Exact).validate().is_ok());
        assert!(FamilySpec::thick(2, 3, 1, 0, 1, Mode::Exact).validate().is_err());
        assert!(FamilySpec::thick(6, 3, 1, 1, 0, Mode::Exact).validate().is_err());
        assert!(FamilySpec::thin(4, 1, 1, -1, Mode::Exact).validate().is_err());
        assert!(FamilySpec::thin(4, 1, 4, 0, Mode::Exact).validate().is_err());
    }

    #[test]
    fn normalization() {
        let (s, f) = FamilySpec::thick(2, 4, 3, 2, 1, Mode::Exact).normalize();
        assert_eq!(s, FamilySpec::thick(2, 4, 0, 1, -1, Mode::Exact));
        assert!(f.dualized && f.swapped);
        let (s, f) = FamilySpec::thick(2, 5, 2, 1, 1, Mode::AtLeast).normalize();
        assert_eq!(s, FamilySpec::thick(2, 5, 1, 2, 1, Mode::Exact));
        assert!(f.swapped);
    }

    #[test]
    fn thin_normalization() {
        let (s, _) = FamilySpec::thin(8, 2, 6, 1, Mode::Exact).normalize();
        assert_eq!(s, FamilySpec::thin(8, 2, 2, 1, Mode::Exact));
        let (s, _) = FamilySpec::thin(8, 3, 4, 3, Mode::Exact).normalize();
        assert_eq!(s, FamilySpec::thin(8, 3, 4, 0, Mode::Exact));
        let (s, _) = FamilySpec::thin(8, 4, 3, 2, Mode::AtLeast).normalize();
        assert_eq!(s, FamilySpec::thin(8, 3, 4, 2, Mode::AtLeast));
        assert!(s.in_thin_scope());
        assert!(!FamilySpec::thin(8, 3, 4, 3, Mode::AtLeast).in_thin_scope());
        assert!(FamilySpec::thin(7, 3, 3, 1, Mode::Exact).in_thin_scope());
        assert!(!FamilySpec::thin(7, 3, 3, 0, Mode::AtLeast).in_thin_scope());
    }
}
