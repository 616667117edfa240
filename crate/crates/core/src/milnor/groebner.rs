use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::order::{Key, MonomialOrder};
use crate::poly::{Monomial, Polynomial, Rational};

/// Polynomial with terms sorted ascending in the term order (leading term last).
#[derive(Clone, Debug, PartialEq, Eq)]
struct OPoly {
    terms: Vec<(Key, Rational)>,
}

impl OPoly {
    fn from_polynomial(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Key, Rational)> = p
            .terms()
            .iter()
            .map(|(m, c)| (order.key(m.clone()), c.clone()))
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        OPoly { terms }
    }

    fn to_polynomial(&self, vars: &[String]) -> Polynomial {
        Polynomial::from_terms(
            vars.to_vec(),
            self.terms.iter().map(|(k, c)| (k.mono.clone(), c.clone())),
        )
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Key, Rational) {
        self.terms.last().expect("leading term of zero polynomial")
    }

    fn lm(&self) -> &Monomial {
        &self.lead().0.mono
    }

    fn make_monic(&mut self) {
        if self.is_zero() {
            return;
        }
        let inv = self.lead().1.recip();
        if inv.is_one() {
            return;
        }
        for t in self.terms.iter_mut() {
            t.1 *= &inv;
        }
    }

    /// `self − c · m · g`.
    fn sub_mul(&self, c: &Rational, m: &Monomial, g: &OPoly, order: &MonomialOrder) -> OPoly {
        let shifted = g.terms.iter().map(|(k, a)| (order.key(k.mono.mul(m)), -(a * c)));
        merge(&self.terms, shifted)
    }

    /// `m · self`.
    fn mul_mono(&self, m: &Monomial, order: &MonomialOrder) -> OPoly {
        OPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (order.key(k.mono.mul(m)), a.clone()))
                .collect(),
        }
    }

    fn sub(&self, other: &OPoly) -> OPoly {
        merge(
            &self.terms,
            other.terms.iter().map(|(k, a)| (k.clone(), -a.clone())),
        )
    }
}

fn merge(a: &[(Key, Rational)], b: impl Iterator<Item = (Key, Rational)>) -> OPoly {
    let mut out = Vec::with_capacity(a.len());
    let mut ia = a.iter().peekable();
    let mut ib = b.peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(ia.next().unwrap().clone()),
            (None, Some(_)) => out.push(ib.next().unwrap()),
            (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                Ordering::Less => out.push(ia.next().unwrap().clone()),
                Ordering::Greater => out.push(ib.next().unwrap()),
                Ordering::Equal => {
                    let (k, c1) = ia.next().unwrap().clone();
                    let (_, c2) = ib.next().unwrap();
                    let c = c1 + c2;
                    if !c.is_zero() {
                        out.push((k, c));
                    }
                }
            },
        }
    }
    OPoly { terms: out }
}

/// Full reduction of `p` by `gens` (each monic).
fn reduce(p: &OPoly, gens: &[OPoly], order: &MonomialOrder) -> OPoly {
    let mut p = p.clone();
    let mut rest: Vec<(Key, Rational)> = Vec::new();
    while let Some((k, c)) = p.terms.last().cloned() {
        match gens.iter().find(|g| g.lm().divides(&k.mono)) {
            Some(g) => {
                let m = k.mono.div(g.lm());
                p = p.sub_mul(&c, &m, g, order);
            }
            None => {
                p.terms.pop();
                rest.push((k, c));
            }
        }
    }
    rest.reverse();
    OPoly { terms: rest }
}

fn s_polynomial(f: &OPoly, g: &OPoly, order: &MonomialOrder) -> OPoly {
    let l = f.lm().lcm(g.lm());
    let a = f.mul_mono(&l.div(f.lm()), order);
    let b = g.mul_mono(&l.div(g.lm()), order);
    a.sub(&b)
}

/// A reduced Gröbner basis: monic generators, sorted by leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub generators: Vec<Polynomial>,
    pub order: MonomialOrder,
    vars: Vec<String>,
    internal: Vec<OPoly>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.order == other.order
    }
}

impl GroebnerBasis {
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.internal.iter().map(|g| g.lm().clone()).collect()
    }

    /// True when the ideal contains 1.
    pub fn is_unit_ideal(&self) -> bool {
        self.internal.iter().any(|g| g.lm().is_one())
    }

    /// Remainder of `p` on division by the basis; canonical for a reduced basis.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.num_vars(), self.num_vars(), "variable count mismatch");
        reduce(&OPoly::from_polynomial(p, &self.order), &self.internal, &self.order)
            .to_polynomial(&self.vars)
    }

    /// Leading monomial of `p` in this basis' order.
    pub fn leading_monomial(&self, p: &Polynomial) -> Option<Monomial> {
        p.support()
            .max_by(|a, b| self.order.compare(a, b))
            .cloned()
    }

    /// Checks that every S-polynomial reduces to zero.
    pub fn is_groebner(&self) -> bool {
        for i in 0..self.internal.len() {
            for j in i + 1..self.internal.len() {
                let s = s_polynomial(&self.internal[i], &self.internal[j], &self.order);
                if !reduce(&s, &self.internal, &self.order).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Buchberger's algorithm with normal pair selection and both criteria.
pub fn groebner_basis(gens: &[Polynomial], order: &MonomialOrder) -> GroebnerBasis {
    assert!(!gens.is_empty(), "no generators");
    let vars = gens[0].vars().to_vec();
    assert!(
        gens.iter().all(|g| g.num_vars() == vars.len()),
        "generators disagree on the number of variables"
    );

    let mut basis: Vec<OPoly> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for g in gens {
        let mut p = reduce(&OPoly::from_polynomial(g, order), &basis, order);
        if p.is_zero() {
            continue;
        }
        p.make_monic();
        add_generator(&mut basis, &mut pairs, p);
    }

    while let Some(idx) = select_pair(&basis, &pairs, order) {
        let (i, j) = pairs.swap_remove(idx);
        let (fi, fj) = (&basis[i], &basis[j]);
        if fi.lm().is_coprime(fj.lm()) {
            continue;
        }
        let l = fi.lm().lcm(fj.lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !has_pair(&pairs, i, k)
                && !has_pair(&pairs, j, k)
        });
        if chain {
            continue;
        }
        let s = s_polynomial(fi, fj, order);
        let mut h = reduce(&s, &basis, order);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        log::trace!("new generator with {} terms", h.terms.len());
        add_generator(&mut basis, &mut pairs, h);
    }

    let internal = interreduce(basis, order);
    let generators = internal.iter().map(|g| g.to_polynomial(&vars)).collect();
    GroebnerBasis {
        generators,
        order: order.clone(),
        vars,
        internal,
    }
}

fn has_pair(pairs: &[(usize, usize)], a: usize, b: usize) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    pairs.iter().any(|&(x, y)| x == a && y == b)
}

fn add_generator(basis: &mut Vec<OPoly>, pairs: &mut Vec<(usize, usize)>, p: OPoly) {
    let new = basis.len();
    basis.push(p);
    pairs.extend((0..new).map(|k| (k, new)));
}

fn select_pair(basis: &[OPoly], pairs: &[(usize, usize)], order: &MonomialOrder) -> Option<usize> {
    pairs
        .iter()
        .enumerate()
        .min_by(|(_, &(a, b)), (_, &(c, d))| {
            let l1 = order.key(basis[a].lm().lcm(basis[b].lm()));
            let l2 = order.key(basis[c].lm().lcm(basis[d].lm()));
            l1.cmp(&l2).then((a, b).cmp(&(c, d)))
        })
        .map(|(i, _)| i)
}

/// Drops redundant generators and fully reduces the rest.
fn interreduce(basis: Vec<OPoly>, order: &MonomialOrder) -> Vec<OPoly> {
    let mut minimal: Vec<OPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<OPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut r = reduce(&minimal[i], &others, order);
        r.make_monic();
        out.push(r);
    }
    out.sort_by(|a, b| a.lead().0.cmp(&b.lead().0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{jacobian_ideal, parse_polynomial, parse_polynomial_with};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str, v: &[&str]) -> Polynomial {
        parse_polynomial_with(s, &vars(v)).unwrap()
    }

    #[test]
    fn cusp_jacobian() {
        let gb = groebner_basis(&[p("3*x^2", &["x", "y"]), p("2*y", &["x", "y"])], &MonomialOrder::Grevlex);
        assert_eq!(gb.generators, vec![p("y", &["x", "y"]), p("x^2", &["x", "y"])]);
        assert!(gb.is_groebner());
    }

    #[test]
    fn single_variable() {
        let gb = groebner_basis(&[p("x", &["x"])], &MonomialOrder::Grevlex);
        assert_eq!(gb.generators, vec![p("x", &["x"])]);
    }

    #[test]
    fn d4_jacobian() {
        let v = ["x", "y"];
        let gb = groebner_basis(
            &[p("2*x*y + y^2", &v), p("x^2 + 2*x*y", &v)],
            &MonomialOrder::Grevlex,
        );
        assert!(gb.is_groebner());
        let lms = gb.leading_monomials();
        assert_eq!(
            lms,
            vec![
                Monomial::new(vec![1, 1]),
                Monomial::new(vec![2, 0]),
                Monomial::new(vec![0, 3])
            ]
        );
        assert!(gb.generators.contains(&p("x*y + 1/2*y^2", &v)));
        assert!(gb.generators.contains(&p("y^3", &v)));
        assert!(gb.generators.contains(&p("x^2 - y^2", &v)));
        // The unreduced generators lie in the ideal.
        assert!(gb.normal_form(&p("x^2 + 2*x*y", &v)).is_zero());
    }

    #[test]
    fn unit_ideal() {
        let f = parse_polynomial("x + y").unwrap();
        let gb = groebner_basis(&jacobian_ideal(&f), &MonomialOrder::Grevlex);
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.generators.len(), 1);
    }

    #[test]
    fn deterministic_and_order_independent_input() {
        let v = ["x", "y", "z"];
        let a = [p("x^2 + y*z", &v), p("y^2 + x*z", &v), p("z^2 + x*y", &v)];
        let b = [a[2].clone(), a[0].clone(), a[1].clone()];
        let g1 = groebner_basis(&a, &MonomialOrder::Grevlex);
        let g2 = groebner_basis(&b, &MonomialOrder::Grevlex);
        assert_eq!(g1, g2);
        assert!(g1.is_groebner());
    }

    #[test]
    fn normal_form_idempotent() {
        let v = ["x", "y"];
        let gb = groebner_basis(
            &[p("2*x*y + y^2", &v), p("x^2 + 2*x*y", &v)],
            &MonomialOrder::Grevlex,
        );
        let q = p("x^5 - 3*x^2*y^3 + 7/2*y + x*y", &v);
        let r = gb.normal_form(&q);
        assert_eq!(gb.normal_form(&r), r);
        assert!(gb.normal_form(&q.sub(&r)).is_zero());
    }
}
