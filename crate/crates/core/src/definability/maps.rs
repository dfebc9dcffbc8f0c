//! The definable maps between root subgroups: the first-factor projection
//! `pi_1`, the transfer `c_ab: x_a(r) -> x_b(r)` and the multiplication
//! `m_abg: (x_a(r), x_b(s)) -> x_g(rs)`.
//!
//! Everything is computed from group operations (products, conjugation by
//! Weyl representatives, commutators, intersections with root subgroups).
//! Reading off the parameter `r` of `x_a(r)` is used only to recognise
//! membership and to pick signs once per pair of roots.

use std::cell::{OnceCell, RefCell};
use std::rc::Rc;

use rustc_hash::FxHashMap;

use crate::chevgroup::{commutator_coefficients, weyl_group, Chevalley, GroupElem, WeylElement};
use crate::error::{Error, Result};
use crate::rings::Code;
use crate::rootsys::Root;

/// `x_b(r) = (n^-1 x_a(r) n)^(+-1)`.
struct Transfer {
    n: GroupElem,
    n_inv: GroupElem,
    flip: bool,
}

/// `mu + nu = gamma` with `[x_mu(eps r), x_nu(s)]` projecting to `x_gamma(rs)`.
#[derive(Clone, Copy, Debug)]
struct Triple {
    mu: Root,
    nu: Root,
    gamma: Root,
    flip: bool,
    /// Roots of the commutator factors, `gamma` first.
    order: [Option<Root>; 4],
}

/// Caches for the definable maps of one group.
pub struct RootMaps<'a> {
    pub group: &'a Chevalley,
    weyl: OnceCell<Vec<WeylElement>>,
    decode: RefCell<FxHashMap<Root, Rc<FxHashMap<GroupElem, Code>>>>,
    transfer: RefCell<FxHashMap<(Root, Root), Rc<Transfer>>>,
    triples: RefCell<FxHashMap<bool, Triple>>,
}

impl<'a> RootMaps<'a> {
    pub fn new(group: &'a Chevalley) -> Self {
        RootMaps {
            group,
            weyl: OnceCell::new(),
            decode: RefCell::default(),
            transfer: RefCell::default(),
            triples: RefCell::default(),
        }
    }

    /// The `r` with `x = x_a(r)`, if `x` lies in `U_a`.
    pub fn decode(&self, a: Root, x: &[Code]) -> Option<Code> {
        let table = self
            .decode
            .borrow_mut()
            .entry(a)
            .or_insert_with(|| {
                let g = self.group;
                Rc::new((0..g.t().size as u32).map(|r| (g.x_code(a, r as Code), r as Code)).collect())
            })
            .clone();
        table.get(x).copied()
    }

    fn member(&self, a: Root, x: &[Code]) -> Result<()> {
        match self.decode(a, x) {
            Some(_) => Ok(()),
            None => Err(Error::Malformed(format!(
                "{} is not in U[{}]",
                self.group.format(x),
                self.group.sys().name(a)
            ))),
        }
    }

    /// `{u_1} = g U_q ... U_2 ∩ U_1` for `g` in `U_1 ... U_q`.
    pub fn pi1(&self, roots: &[Root], x: &[Code]) -> Result<GroupElem> {
        let g = self.group;
        let Some(&first) = roots.first() else { return Err(Error::Malformed("no root subgroups".into())) };
        for (i, a) in roots.iter().enumerate() {
            if roots[..i].contains(a) {
                return Err(Error::Malformed(format!("U[{}] repeated", g.sys().name(*a))));
            }
        }
        let mut set = vec![GroupElem::from(x)];
        for &b in roots[1..].iter().rev() {
            let ub = g.root_group(b);
            set = set.iter().flat_map(|s| ub.iter().map(move |u| g.mul(s, u))).collect();
        }
        let mut hits: Vec<GroupElem> = set.into_iter().filter(|s| self.decode(first, s).is_some()).collect();
        hits.sort();
        hits.dedup();
        match hits.len() {
            1 => Ok(hits.pop().expect("one element")),
            0 => Err(Error::Malformed(format!("{} is not in the product set", g.format(x)))),
            n => Err(Error::Malformed(format!("projection of {} has {n} candidates", g.format(x)))),
        }
    }

    fn transfer(&self, a: Root, b: Root) -> Result<Rc<Transfer>> {
        if let Some(t) = self.transfer.borrow().get(&(a, b)) {
            return Ok(t.clone());
        }
        let g = self.group;
        let weyl = self.weyl.get_or_init(|| weyl_group(g.sys()));
        let one = g.x_code(a, g.t().one);
        let minus_one = g.t().sub(0, g.t().one);
        for w in weyl.iter().filter(|w| w.apply(a) == b) {
            let n = g.weyl_rep(&w.word);
            let n_inv = g.inv(&n);
            for (n, n_inv) in [(n.clone(), n_inv.clone()), (n_inv, n)] {
                let y = g.mul(&n_inv, &g.mul(&one, &n));
                let flip = match self.decode(b, &y) {
                    Some(r) if r == g.t().one => false,
                    Some(r) if r == minus_one => true,
                    _ => continue,
                };
                let t = Rc::new(Transfer { n, n_inv, flip });
                self.transfer.borrow_mut().insert((a, b), t.clone());
                return Ok(t);
            }
        }
        Err(Error::Malformed(format!("no Weyl element carries {} to {}", g.sys().name(a), g.sys().name(b))))
    }

    fn triple(&self, cross: bool) -> Result<Triple> {
        if let Some(t) = self.triples.borrow().get(&cross) {
            return Ok(*t);
        }
        let g = self.group;
        let sys = g.sys();
        let simple = sys.simple_roots();
        let pair = simple
            .iter()
            .flat_map(|&m| simple.iter().map(move |&n| (m, n)))
            .find(|&(m, n)| {
                sys.add(m, n).is_some() && (!cross || (sys.is_short(m) && sys.is_long(n)))
            })
            .ok_or_else(|| Error::Malformed(format!("{} has no suitable pair of simple roots", sys.label())))?;
        let (mu, nu) = pair;
        let gamma = sys.add(mu, nu).expect("checked above");
        let mut order = [None; 4];
        // Factors of [x_mu(t), x_nu(s)] are x_{i nu + j mu} in increasing i + j.
        for (k, (_, _, r, _)) in commutator_coefficients(sys, nu, mu).into_iter().enumerate() {
            order[k] = Some(r);
        }
        debug_assert_eq!(order[0], Some(gamma));
        let mut t = Triple { mu, nu, gamma, flip: false, order };
        let one = g.t().one;
        let c = g.comm(&g.x_code(mu, one), &g.x_code(nu, one));
        let p = self.pi1(&t.roots(), &c)?;
        t.flip = match self.decode(gamma, &p) {
            Some(r) if r == one => false,
            Some(r) if r == g.t().sub(0, one) => true,
            _ => return Err(Error::Malformed(format!("structure constant N({}, {}) is not a unit", sys.name(mu), sys.name(nu)))),
        };
        self.triples.borrow_mut().insert(cross, t);
        Ok(t)
    }

    /// `[x_mu(+-r), y]` projected to `U_gamma`.
    fn commutator_projection(&self, t: &Triple, xm: &[Code], y: &[Code]) -> Result<GroupElem> {
        let g = self.group;
        let xm = if t.flip { g.inv(xm) } else { GroupElem::from(xm) };
        self.pi1(&t.roots(), &g.comm(&xm, y))
    }

    /// `c_ab(x_a(r)) = x_b(r)`.
    pub fn c(&self, a: Root, b: Root, x: &[Code]) -> Result<GroupElem> {
        self.member(a, x)?;
        let g = self.group;
        let sys = g.sys();
        if a == b {
            return Ok(GroupElem::from(x));
        }
        if sys.is_long(a) == sys.is_long(b) {
            let t = self.transfer(a, b)?;
            let y = g.mul(&t.n_inv, &g.mul(x, &t.n));
            return Ok(if t.flip { g.inv(&y) } else { y });
        }
        if sys.is_long(a) {
            let t = self.triple(true)?;
            let y = self.c(a, t.nu, x)?;
            let one = g.x_code(t.mu, g.t().one);
            let z = self.commutator_projection(&t, &one, &y)?;
            return self.c(t.gamma, b, &z);
        }
        // Short to long inverts the long-to-short map.
        for y in g.root_group(b) {
            if self.c(b, a, &y)?.as_ref() == x {
                return Ok(y);
            }
        }
        Err(Error::Malformed(format!("c({}, {}) is not onto", sys.name(b), sys.name(a))))
    }

    /// `m_abg(x_a(r), x_b(s)) = x_g(rs)`.
    pub fn m(&self, a: Root, b: Root, gamma: Root, xa: &[Code], xb: &[Code]) -> Result<GroupElem> {
        self.member(a, xa)?;
        self.member(b, xb)?;
        let sys = self.group.sys();
        let t = self.triple(!sys.is_simply_laced())?;
        let r = self.c(a, t.mu, xa)?;
        let s = self.c(b, t.nu, xb)?;
        let z = self.commutator_projection(&t, &r, &s)?;
        self.c(t.gamma, gamma, &z)
    }
}

impl Triple {
    fn roots(&self) -> Vec<Root> {
        self.order.iter().flatten().copied().collect()
    }
}

/// `pi_1` for the product `U_1 ... U_q` in the given order.
pub fn proj_pi1(g: &Chevalley, roots: &[Root], x: &[Code]) -> Result<GroupElem> {
    RootMaps::new(g).pi1(roots, x)
}

pub fn map_c(g: &Chevalley, a: Root, b: Root, x: &[Code]) -> Result<GroupElem> {
    RootMaps::new(g).c(a, b, x)
}

pub fn map_m(g: &Chevalley, a: Root, b: Root, gamma: Root, xa: &[Code], xb: &[Code]) -> Result<GroupElem> {
    RootMaps::new(g).m(a, b, gamma, xa, xb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Ring;

    fn group(spec: &str, q: &str) -> Chevalley {
        Chevalley::parse(spec, Ring::parse(q).unwrap()).unwrap()
    }

    #[test]
    fn projection() {
        let g = group("SL3", "F5");
        let sys = g.sys();
        let (a, b) = (sys.simple(0), sys.simple(1));
        let (two, three) = (g.ring.from_int(2), g.ring.from_int(3));
        assert_eq!(proj_pi1(&g, &[a], &g.x(a, &two)).unwrap(), g.x(a, &two));
        let x = g.mul(&g.x(a, &two), &g.x(b, &three));
        assert_eq!(proj_pi1(&g, &[a, b], &x).unwrap(), g.x(a, &two));
        assert_eq!(proj_pi1(&g, &[b, a], &g.mul(&g.x(b, &three), &g.x(a, &two))).unwrap(), g.x(b, &three));
        let outside = g.x(sys.neg(a), &two);
        assert!(matches!(proj_pi1(&g, &[a, b], &outside), Err(Error::Malformed(_))));
        assert!(proj_pi1(&g, &[a, a], &x).is_err());
    }

    #[test]
    fn transfer_same_length() {
        let g = group("SL3", "F5");
        let sys = g.sys();
        let (a, b) = (sys.simple(0), sys.simple(1));
        let three = g.ring.from_int(3);
        assert_eq!(map_c(&g, a, a, &g.x(a, &three)).unwrap(), g.x(a, &three));
        assert_eq!(map_c(&g, a, b, &g.x(a, &three)).unwrap(), g.x(b, &three));
        let maps = RootMaps::new(&g);
        for a in sys.roots() {
            for b in sys.roots() {
                for r in g.ring.elements().unwrap() {
                    assert_eq!(maps.c(a, b, &g.x(a, &r)).unwrap(), g.x(b, &r));
                }
            }
        }
        assert!(map_c(&g, a, b, &g.x(b, &three)).is_err());
    }

    /// Exhaustive over all roots and ring elements, across both length classes.
    #[test]
    fn transfer_across_lengths() {
        for (spec, q) in [("Sp4", "F5"), ("SO5", "F3"), ("G2adj", "F3"), ("B2adj", "F4"), ("Sp4", "Z/4")] {
            let g = group(spec, q);
            let sys = g.sys();
            let maps = RootMaps::new(&g);
            let ring = g.ring.elements().unwrap();
            for a in sys.roots() {
                for b in [sys.simple(0), sys.simple(1), sys.highest_root()] {
                    for r in &ring {
                        assert_eq!(maps.c(a, b, &g.x(a, r)).unwrap(), g.x(b, r), "{spec}/{q}");
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication() {
        let g = group("SL3", "F5");
        let sys = g.sys();
        let (a, b) = (sys.simple(0), sys.simple(1));
        let c = sys.add(a, b).unwrap();
        let r = |n| g.ring.from_int(n);
        assert_eq!(map_m(&g, a, b, c, &g.x(a, &r(2)), &g.x(b, &r(3))).unwrap(), g.x(c, &r(1)));
        assert_eq!(map_m(&g, a, b, c, &g.x(a, &r(0)), &g.x(b, &r(3))).unwrap(), g.identity());
        for (spec, q) in [("SL3", "F4"), ("Sp4", "F3"), ("G2adj", "F2"), ("SO7", "F3")] {
            let g = group(spec, q);
            let sys = g.sys();
            let maps = RootMaps::new(&g);
            let ring = g.ring.elements().unwrap();
            let (a, b, c) = (sys.simple(0), sys.simple(1), sys.highest_root());
            for r in &ring {
                for s in &ring {
                    let got = maps.m(a, b, c, &g.x(a, r), &g.x(b, s)).unwrap();
                    assert_eq!(got, g.x(c, &(r * s)), "{spec}/{q}");
                }
            }
        }
    }
}
