//! Graph specifications of the form `name:key=value,key=value`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{
    adversarial_instance, arboricity_union, bushy_tree, named_family, random_bounded_tree,
    random_tree, AdversarialInstance, AdversarialParams, AdversarialShape, NamedFamily,
};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphSpec {
    Named(NamedFamily),
    RandomTree { n: usize },
    RandomBounded { n: usize, delta: usize },
    Bushy { n: usize, delta: usize },
    Arboricity { n: usize, alpha: u32 },
    Adversarial(AdversarialShape),
}

/// Every family name with its keys, in grammar order.
pub const SPEC_KEYS: &[(&str, &[&str])] = &[
    ("path", &["n"]),
    ("star", &["leaves"]),
    ("complete_dary", &["d", "depth"]),
    ("caterpillar", &["spine", "legs"]),
    ("broom", &["handle", "bristles"]),
    ("random_tree", &["n"]),
    ("random_bounded", &["n", "delta"]),
    ("bushy", &["n", "delta"]),
    ("arboricity", &["n", "alpha"]),
    ("adv", &["r", "n"]),
    ("adv", &["s", "t"]),
];

/// A generated input; adversarial instances keep their metadata.
#[derive(Clone, Debug)]
pub enum BuiltGraph {
    Plain(Graph),
    Adversarial(AdversarialInstance),
}

impl BuiltGraph {
    pub fn graph(&self) -> &Graph {
        match self {
            BuiltGraph::Plain(g) => g,
            BuiltGraph::Adversarial(inst) => &inst.graph,
        }
    }

    pub fn into_graph(self) -> Graph {
        match self {
            BuiltGraph::Plain(g) => g,
            BuiltGraph::Adversarial(inst) => inst.graph,
        }
    }
}

impl GraphSpec {
    pub fn build(&self, seed: u64) -> Result<BuiltGraph> {
        Ok(BuiltGraph::Plain(match *self {
            GraphSpec::Named(f) => named_family(f)?,
            GraphSpec::RandomTree { n } => random_tree(n, seed)?,
            GraphSpec::RandomBounded { n, delta } => random_bounded_tree(n, delta, seed)?,
            GraphSpec::Bushy { n, delta } => bushy_tree(n, delta, seed)?,
            GraphSpec::Arboricity { n, alpha } => arboricity_union(n, alpha, seed)?.graph,
            GraphSpec::Adversarial(shape) => {
                let inst = adversarial_instance(AdversarialParams { shape, seed })?;
                return Ok(BuiltGraph::Adversarial(inst));
            }
        }))
    }

    /// Arboricity the family guarantees.
    pub fn declared_alpha(&self) -> u32 {
        match *self {
            GraphSpec::Arboricity { alpha, .. } => alpha,
            _ => 1,
        }
    }

    /// Maximum degree the family guarantees, when it has one.
    pub fn declared_max_degree(&self) -> Option<u32> {
        match *self {
            GraphSpec::RandomBounded { delta, .. } | GraphSpec::Bushy { delta, .. } => {
                Some(delta as u32)
            }
            _ => None,
        }
    }

    /// The same family at size `n`, for size sweeps.
    pub fn with_n(&self, n: usize) -> Result<GraphSpec> {
        Ok(match *self {
            GraphSpec::Named(NamedFamily::Path { .. }) => GraphSpec::Named(NamedFamily::Path { n }),
            GraphSpec::RandomTree { .. } => GraphSpec::RandomTree { n },
            GraphSpec::RandomBounded { delta, .. } => GraphSpec::RandomBounded { n, delta },
            GraphSpec::Bushy { delta, .. } => GraphSpec::Bushy { n, delta },
            GraphSpec::Arboricity { alpha, .. } => GraphSpec::Arboricity { n, alpha },
            other => {
                return Err(Error::invalid(format!(
                    "{other} has no single size parameter to sweep"
                )))
            }
        })
    }
}

struct Keys<'a> {
    family: &'a str,
    map: BTreeMap<&'a str, &'a str>,
}

impl<'a> Keys<'a> {
    fn take<T: FromStr>(&mut self, key: &str) -> Result<T> {
        let raw = self
            .map
            .remove(key)
            .ok_or_else(|| Error::invalid(format!("{}: missing key {key:?}", self.family)))?;
        parse_number(raw).ok_or_else(|| {
            Error::invalid(format!("{}: bad value {raw:?} for key {key:?}", self.family))
        })
    }

    fn finish(self) -> Result<()> {
        match self.map.keys().next() {
            Some(k) => Err(Error::invalid(format!("{}: unknown key {k:?}", self.family))),
            None => Ok(()),
        }
    }
}

/// Integers, optionally written as `1e5` or with `_` separators.
fn parse_number<T: FromStr>(raw: &str) -> Option<T> {
    let clean = raw.replace('_', "");
    if let Ok(v) = clean.parse() {
        return Some(v);
    }
    let (mantissa, exp) = clean.split_once(['e', 'E'])?;
    let mantissa: u64 = mantissa.parse().ok()?;
    let exp: u32 = exp.parse().ok()?;
    let value = mantissa.checked_mul(10u64.checked_pow(exp)?)?;
    value.to_string().parse().ok()
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut map = BTreeMap::new();
        for pair in rest.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("{family}: expected key=value, got {pair:?}")))?;
            if map.insert(k.trim(), v.trim()).is_some() {
                return Err(Error::invalid(format!("{family}: key {k:?} given twice")));
            }
        }
        let mut keys = Keys { family, map };
        let spec = match family {
            "path" => GraphSpec::Named(NamedFamily::Path { n: keys.take("n")? }),
            "star" => GraphSpec::Named(NamedFamily::Star {
                leaves: keys.take("leaves")?,
            }),
            "complete_dary" => GraphSpec::Named(NamedFamily::CompleteDary {
                d: keys.take("d")?,
                depth: keys.take("depth")?,
            }),
            "caterpillar" => GraphSpec::Named(NamedFamily::Caterpillar {
                spine: keys.take("spine")?,
                legs: keys.take("legs")?,
            }),
            "broom" => GraphSpec::Named(NamedFamily::Broom {
                handle: keys.take("handle")?,
                bristles: keys.take("bristles")?,
            }),
            "random_tree" => GraphSpec::RandomTree { n: keys.take("n")? },
            "random_bounded" => GraphSpec::RandomBounded {
                n: keys.take("n")?,
                delta: keys.take("delta")?,
            },
            "bushy" => GraphSpec::Bushy {
                n: keys.take("n")?,
                delta: keys.take("delta")?,
            },
            "arboricity" => GraphSpec::Arboricity {
                n: keys.take("n")?,
                alpha: keys.take("alpha")?,
            },
            "adv" => {
                if keys.map.contains_key("s") || keys.map.contains_key("t") {
                    GraphSpec::Adversarial(AdversarialShape::Explicit {
                        s: keys.take("s")?,
                        t: keys.take("t")?,
                    })
                } else {
                    GraphSpec::Adversarial(AdversarialShape::Derived {
                        n: keys.take("n")?,
                        r: keys.take("r")?,
                    })
                }
            }
            other => {
                return Err(Error::invalid(format!(
                    "unknown graph family {other:?}; expected one of path, star, complete_dary, \
                     caterpillar, broom, random_tree, random_bounded, bushy, arboricity, adv"
                )))
            }
        };
        keys.finish()?;
        Ok(spec)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphSpec::Named(NamedFamily::Path { n }) => write!(f, "path:n={n}"),
            GraphSpec::Named(NamedFamily::Star { leaves }) => write!(f, "star:leaves={leaves}"),
            GraphSpec::Named(NamedFamily::CompleteDary { d, depth }) => {
                write!(f, "complete_dary:d={d},depth={depth}")
            }
            GraphSpec::Named(NamedFamily::Caterpillar { spine, legs }) => {
                write!(f, "caterpillar:spine={spine},legs={legs}")
            }
            GraphSpec::Named(NamedFamily::Broom { handle, bristles }) => {
                write!(f, "broom:handle={handle},bristles={bristles}")
            }
            GraphSpec::RandomTree { n } => write!(f, "random_tree:n={n}"),
            GraphSpec::RandomBounded { n, delta } => write!(f, "random_bounded:n={n},delta={delta}"),
            GraphSpec::Bushy { n, delta } => write!(f, "bushy:n={n},delta={delta}"),
            GraphSpec::Arboricity { n, alpha } => write!(f, "arboricity:n={n},alpha={alpha}"),
            GraphSpec::Adversarial(AdversarialShape::Derived { n, r }) => write!(f, "adv:r={r},n={n}"),
            GraphSpec::Adversarial(AdversarialShape::Explicit { s, t }) => write!(f, "adv:s={s},t={t}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in [
            "path:n=10",
            "star:leaves=5",
            "complete_dary:d=3,depth=4",
            "caterpillar:spine=10,legs=2",
            "broom:handle=4,bristles=9",
            "random_tree:n=100000",
            "random_bounded:n=100000,delta=16",
            "bushy:n=1000,delta=16",
            "arboricity:n=1000,alpha=3",
            "adv:r=2,n=100000000",
            "adv:s=4,t=3",
        ] {
            assert_eq!(s.parse::<GraphSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn key_order_and_exponents() {
        let a: GraphSpec = "random_bounded:delta=3,n=1e4".parse().unwrap();
        assert_eq!(a, GraphSpec::RandomBounded { n: 10_000, delta: 3 });
        let b: GraphSpec = "adv:n=100_000_000,r=2".parse().unwrap();
        assert_eq!(b.to_string(), "adv:r=2,n=100000000");
    }

    #[test]
    fn rejects_bad_specs() {
        for s in [
            "path",
            "path:n=x",
            "path:n=3,m=4",
            "path:n=3,n=4",
            "tree:n=3",
            "adv:s=4",
            "star:leaves",
        ] {
            assert!(s.parse::<GraphSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn builds() {
        let g = "path:n=10".parse::<GraphSpec>().unwrap().build(0).unwrap();
        assert_eq!(g.graph().m(), 9);
        let g = "adv:s=4,t=3".parse::<GraphSpec>().unwrap().build(0).unwrap();
        assert!(matches!(g, BuiltGraph::Adversarial(_)));
        assert_eq!(g.graph().n(), 316);
    }

    #[test]
    fn sweeps_change_only_n() {
        let s: GraphSpec = "bushy:n=10,delta=16".parse().unwrap();
        assert_eq!(s.with_n(1000).unwrap().to_string(), "bushy:n=1000,delta=16");
        assert!("star:leaves=3".parse::<GraphSpec>().unwrap().with_n(5).is_err());
    }
}
