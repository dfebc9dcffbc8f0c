use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::Chevalley;
use super::matrix::GroupElem;
use crate::error::Result;
use crate::rootsys::Root;

/// A named subgroup of `G(R)` that can be listed explicitly over a finite ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "parts", rename_all = "snake_case")]
pub enum Subgroup {
    RootGroup(Root),
    /// Products of `h_{a_i}(t_i)` over the simple roots.
    Torus,
    Center,
    /// Set product of the parts, in order.
    Product(Vec<Subgroup>),
}

impl Subgroup {
    /// `U_a(R) Z(R)`.
    pub fn uz(a: Root) -> Self {
        Subgroup::Product(vec![Subgroup::RootGroup(a), Subgroup::Center])
    }

    /// Sorted, duplicate-free element list.
    pub fn materialize(&self, g: &Chevalley) -> Result<Vec<GroupElem>> {
        Ok(match self {
            Subgroup::RootGroup(a) => dedup(g.root_group(*a)),
            Subgroup::Center => dedup(g.scalar_center()),
            Subgroup::Torus => {
                let units = g.ring.units()?;
                let mut parts = Vec::new();
                for i in 0..g.sys().rank() {
                    let a = g.sys().simple(i);
                    parts.push(units.iter().map(|t| g.h(a, t)).collect::<Result<Vec<_>>>()?);
                }
                set_product(g, &parts)
            }
            Subgroup::Product(ps) => {
                let parts = ps.iter().map(|p| p.materialize(g)).collect::<Result<Vec<_>>>()?;
                set_product(g, &parts)
            }
        })
    }

    pub fn describe(&self, g: &Chevalley) -> String {
        Described(self, g).to_string()
    }
}

struct Described<'a>(&'a Subgroup, &'a Chevalley);

impl fmt::Display for Described<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Subgroup::RootGroup(a) => write!(f, "U[{}]", self.1.sys().name(*a)),
            Subgroup::Torus => write!(f, "T"),
            Subgroup::Center => write!(f, "Z"),
            Subgroup::Product(ps) => {
                for p in ps {
                    write!(f, "{}", Described(p, self.1))?;
                }
                Ok(())
            }
        }
    }
}

fn dedup(v: Vec<GroupElem>) -> Vec<GroupElem> {
    v.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// `{a_1 a_2 ... : a_i in parts[i]}`.
pub fn set_product(g: &Chevalley, parts: &[Vec<GroupElem>]) -> Vec<GroupElem> {
    let mut acc: BTreeSet<GroupElem> = BTreeSet::from([g.identity()]);
    for p in parts {
        acc = acc.iter().flat_map(|x| p.iter().map(move |y| g.mul(x, y))).collect();
    }
    acc.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Ring;

    fn group(spec: &str, f: &str) -> Chevalley {
        Chevalley::parse(spec, Ring::parse(f).unwrap()).unwrap()
    }

    #[test]
    fn sizes() {
        let g = group("SL3", "F5");
        let a = g.sys().simple(0);
        assert_eq!(Subgroup::RootGroup(a).materialize(&g).unwrap().len(), 5);
        assert_eq!(Subgroup::Torus.materialize(&g).unwrap().len(), 16);
        let g4 = group("SL3", "F4");
        assert_eq!(Subgroup::uz(a).materialize(&g4).unwrap().len(), 12);
        assert_eq!(Subgroup::Center.materialize(&group("Sp4", "F3")).unwrap().len(), 2);
        assert_eq!(Subgroup::Center.materialize(&group("G2adj", "F3")).unwrap().len(), 1);
    }

    #[test]
    fn serde_and_names() {
        let g = group("SL3", "F2");
        let s = Subgroup::uz(g.sys().simple(1));
        assert_eq!(s.describe(&g), "U[a2]Z");
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<Subgroup>(&j).unwrap(), s);
    }
}
