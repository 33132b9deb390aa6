use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Topology family names, as used in configs and on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Path,
    Cycle,
    Clique,
    Star,
    BinaryTree,
    Hypercube,
    Torus,
    Grid,
    Barbell,
    RandomRegular,
    LowerBound,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 11] = [
        FamilyKind::Path,
        FamilyKind::Cycle,
        FamilyKind::Clique,
        FamilyKind::Star,
        FamilyKind::BinaryTree,
        FamilyKind::Hypercube,
        FamilyKind::Torus,
        FamilyKind::Grid,
        FamilyKind::Barbell,
        FamilyKind::RandomRegular,
        FamilyKind::LowerBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Clique => "clique",
            FamilyKind::Star => "star",
            FamilyKind::BinaryTree => "binary_tree",
            FamilyKind::Hypercube => "hypercube",
            FamilyKind::Torus => "torus",
            FamilyKind::Grid => "grid",
            FamilyKind::Barbell => "barbell",
            FamilyKind::RandomRegular => "random_regular",
            FamilyKind::LowerBound => "lower_bound",
        }
    }

    /// Families whose automorphism group acts transitively on vertices.
    pub fn is_vertex_transitive(self) -> bool {
        matches!(
            self,
            FamilyKind::Cycle | FamilyKind::Clique | FamilyKind::Hypercube | FamilyKind::Torus
        )
    }

    pub fn is_random(self) -> bool {
        matches!(self, FamilyKind::RandomRegular | FamilyKind::LowerBound)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family '{s}'")))
    }
}

fn default_alpha_floor() -> f64 {
    super::DEFAULT_ALPHA_FLOOR
}

/// A fully parameterized topology.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Path { n: usize },
    Cycle { n: usize },
    Clique { n: usize },
    /// One center plus `n - 1` leaves.
    Star { n: usize },
    /// Complete binary tree with `2^levels - 1` vertices.
    BinaryTree { levels: u32 },
    Hypercube { dim: u32 },
    /// `side^dim` vertices with wrap-around.
    Torus { dim: u32, side: usize },
    /// `side^dim` vertices without wrap-around.
    Grid { dim: u32, side: usize },
    /// Two `n/4` cliques joined through a path of `n/2` vertices.
    Barbell { n: usize },
    RandomRegular { n: usize, degree: usize },
    LowerBound {
        n: usize,
        alpha: f64,
        #[serde(default = "default_alpha_floor")]
        alpha_floor: f64,
    },
}

impl FamilySpec {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Path { .. } => FamilyKind::Path,
            FamilySpec::Cycle { .. } => FamilyKind::Cycle,
            FamilySpec::Clique { .. } => FamilyKind::Clique,
            FamilySpec::Star { .. } => FamilyKind::Star,
            FamilySpec::BinaryTree { .. } => FamilyKind::BinaryTree,
            FamilySpec::Hypercube { .. } => FamilyKind::Hypercube,
            FamilySpec::Torus { .. } => FamilyKind::Torus,
            FamilySpec::Grid { .. } => FamilyKind::Grid,
            FamilySpec::Barbell { .. } => FamilyKind::Barbell,
            FamilySpec::RandomRegular { .. } => FamilyKind::RandomRegular,
            FamilySpec::LowerBound { .. } => FamilyKind::LowerBound,
        }
    }

    /// Builds a spec from a family name and its primary size parameter.
    ///
    /// The size parameter is `n` for most families, `levels` for the binary
    /// tree, `dim` for the hypercube and `side` for torus and grid. `dim`,
    /// `degree` and `alpha` fill in the secondary parameters where needed.
    pub fn from_size(
        kind: FamilyKind,
        size: usize,
        dim: Option<u32>,
        degree: Option<usize>,
        alpha: Option<f64>,
    ) -> Result<Self> {
        let spec = match kind {
            FamilyKind::Path => FamilySpec::Path { n: size },
            FamilyKind::Cycle => FamilySpec::Cycle { n: size },
            FamilyKind::Clique => FamilySpec::Clique { n: size },
            FamilyKind::Star => FamilySpec::Star { n: size },
            FamilyKind::BinaryTree => FamilySpec::BinaryTree { levels: size as u32 },
            FamilyKind::Hypercube => FamilySpec::Hypercube { dim: size as u32 },
            FamilyKind::Torus => FamilySpec::Torus { dim: dim.unwrap_or(2), side: size },
            FamilyKind::Grid => FamilySpec::Grid { dim: dim.unwrap_or(2), side: size },
            FamilyKind::Barbell => FamilySpec::Barbell { n: size },
            FamilyKind::RandomRegular => FamilySpec::RandomRegular {
                n: size,
                degree: degree.unwrap_or(3),
            },
            FamilyKind::LowerBound => FamilySpec::LowerBound {
                n: size,
                alpha: alpha.unwrap_or(1.0),
                alpha_floor: super::DEFAULT_ALPHA_FLOOR,
            },
        };
        spec.check()?;
        Ok(spec)
    }

    /// Spec whose vertex count is close to `n`: lattices use side
    /// `round(n^{1/dim})`, binary trees `round(log₂(n+1))` levels and
    /// hypercubes dimension `round(log₂ n)`. Barbells round to a multiple of
    /// 4 and random regular graphs round up so that `n·r` is even. Other
    /// families take `n` as is.
    pub fn with_vertices(
        kind: FamilyKind,
        n: usize,
        dim: Option<u32>,
        degree: Option<usize>,
        alpha: Option<f64>,
    ) -> Result<Self> {
        let x = n as f64;
        let size = match kind {
            FamilyKind::Torus | FamilyKind::Grid => x.powf(1.0 / dim.unwrap_or(2) as f64).round() as usize,
            FamilyKind::BinaryTree => (x + 1.0).log2().round() as usize,
            FamilyKind::Hypercube => x.log2().round() as usize,
            FamilyKind::Barbell => ((x / 4.0).round() as usize).max(2) * 4,
            FamilyKind::RandomRegular if n % 2 == 1 && degree.unwrap_or(3) % 2 == 1 => n + 1,
            _ => n,
        };
        Self::from_size(kind, size, dim, degree, alpha)
    }

    /// Number of vertices the generated graph will have.
    pub fn vertex_count(&self) -> Result<usize> {
        self.check()?;
        Ok(match *self {
            FamilySpec::Path { n }
            | FamilySpec::Cycle { n }
            | FamilySpec::Clique { n }
            | FamilySpec::Star { n }
            | FamilySpec::Barbell { n }
            | FamilySpec::RandomRegular { n, .. } => n,
            FamilySpec::BinaryTree { levels } => (1usize << levels) - 1,
            FamilySpec::Hypercube { dim } => 1usize << dim,
            FamilySpec::Torus { dim, side } | FamilySpec::Grid { dim, side } => {
                side.pow(dim)
            }
            FamilySpec::LowerBound { n, alpha, alpha_floor } => {
                super::lower_bound::Layout::new(n, alpha, alpha_floor)?.total()
            }
        })
    }

    /// Rejects parameter combinations that cannot produce a valid connected
    /// simple graph.
    pub fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        match *self {
            FamilySpec::Path { n } if n < 2 => bad(format!("path needs n >= 2, got {n}")),
            FamilySpec::Cycle { n } if n < 3 => bad(format!("cycle needs n >= 3, got {n}")),
            FamilySpec::Clique { n } if n < 2 => bad(format!("clique needs n >= 2, got {n}")),
            FamilySpec::Star { n } if n < 2 => bad(format!("star needs n >= 2, got {n}")),
            FamilySpec::BinaryTree { levels } if !(2..=24).contains(&levels) => {
                bad(format!("binary tree needs 2 <= levels <= 24, got {levels}"))
            }
            FamilySpec::Hypercube { dim } if !(1..=24).contains(&dim) => {
                bad(format!("hypercube needs 1 <= dim <= 24, got {dim}"))
            }
            FamilySpec::Torus { dim, side } if dim == 0 || side < 3 => {
                bad(format!("torus needs dim >= 1 and side >= 3, got dim {dim}, side {side}"))
            }
            FamilySpec::Grid { dim, side } if dim == 0 || side < 2 => {
                bad(format!("grid needs dim >= 1 and side >= 2, got dim {dim}, side {side}"))
            }
            FamilySpec::Torus { dim, side } | FamilySpec::Grid { dim, side }
                if (side as f64).powi(dim as i32) > 1e8 =>
            {
                bad(format!("{side}^{dim} vertices is too many"))
            }
            FamilySpec::Barbell { n } if n < 8 || n % 4 != 0 => {
                bad(format!("barbell needs n >= 8 divisible by 4, got {n}"))
            }
            FamilySpec::RandomRegular { n, degree } => {
                if degree < 3 {
                    bad(format!("random regular needs degree >= 3, got {degree}"))
                } else if degree >= n {
                    bad(format!("random regular needs degree < n, got degree {degree}, n {n}"))
                } else if (n * degree) % 2 != 0 {
                    bad(format!("random regular needs n * degree even, got {n} * {degree}"))
                } else {
                    Ok(())
                }
            }
            FamilySpec::LowerBound { n, alpha, alpha_floor } => {
                super::lower_bound::Layout::new(n, alpha, alpha_floor).map(|_| ())
            }
            _ => Ok(()),
        }
    }

    /// Short human-readable label, e.g. `torus(dim=3,side=8)`.
    pub fn label(&self) -> String {
        match *self {
            FamilySpec::Path { n }
            | FamilySpec::Cycle { n }
            | FamilySpec::Clique { n }
            | FamilySpec::Star { n }
            | FamilySpec::Barbell { n } => format!("{}(n={n})", self.kind()),
            FamilySpec::BinaryTree { levels } => format!("binary_tree(levels={levels})"),
            FamilySpec::Hypercube { dim } => format!("hypercube(dim={dim})"),
            FamilySpec::Torus { dim, side } => format!("torus(dim={dim},side={side})"),
            FamilySpec::Grid { dim, side } => format!("grid(dim={dim},side={side})"),
            FamilySpec::RandomRegular { n, degree } => {
                format!("random_regular(n={n},degree={degree})")
            }
            FamilySpec::LowerBound { n, alpha, .. } => format!("lower_bound(n={n},alpha={alpha})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        for k in FamilyKind::ALL {
            assert_eq!(k.name().parse::<FamilyKind>().unwrap(), k);
        }
        assert!("moebius".parse::<FamilyKind>().is_err());
    }

    #[test]
    fn odd_regular_product_rejected() {
        let err = FamilySpec::RandomRegular { n: 9, degree: 3 }.check().unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(_)));
    }

    #[test]
    fn spec_toml_round_trip() {
        let spec = FamilySpec::Torus { dim: 3, side: 5 };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(text, r#"{"family":"torus","dim":3,"side":5}"#);
        let back: FamilySpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let lb: FamilySpec = serde_json::from_str(r#"{"family":"lower_bound","n":64,"alpha":1.0}"#).unwrap();
        assert_eq!(lb, FamilySpec::LowerBound { n: 64, alpha: 1.0, alpha_floor: 4.0 });
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(FamilySpec::BinaryTree { levels: 4 }.vertex_count().unwrap(), 15);
        assert_eq!(FamilySpec::Torus { dim: 3, side: 5 }.vertex_count().unwrap(), 125);
        assert_eq!(FamilySpec::Hypercube { dim: 6 }.vertex_count().unwrap(), 64);
    }
}
