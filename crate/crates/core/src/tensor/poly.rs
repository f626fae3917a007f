use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent triple `(a, b, c)` of the monomial `x1^a x2^b x3^c`.
pub type Exponents = [u32; 3];

/// Multivariate polynomial in `(x1, x2, x3)` with real coefficients.
///
/// Terms are kept in a `BTreeMap` so iteration order (and therefore every
/// floating-point reduction over terms) is deterministic. Zero coefficients
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly {
    terms: BTreeMap<Exponents, f64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: f64) -> Self {
        Poly::monomial([0, 0, 0], c)
    }

    /// The coordinate function `x_{axis+1}`.
    pub fn var(axis: usize) -> Self {
        let mut e = [0, 0, 0];
        e[axis] = 1;
        Poly::monomial(e, 1.0)
    }

    pub fn monomial(exps: Exponents, coefficient: f64) -> Self {
        let mut p = Poly::zero();
        p.add_term(exps, coefficient);
        p
    }

    /// Affine polynomial `c0 + c·x`.
    pub fn affine(c0: f64, c: [f64; 3]) -> Self {
        let mut p = Poly::constant(c0);
        for (axis, &ci) in c.iter().enumerate() {
            let mut e = [0, 0, 0];
            e[axis] = 1;
            p.add_term(e, ci);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, f64)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: Exponents, coefficient: f64) {
        if coefficient == 0.0 {
            return;
        }
        let entry = self.terms.entry(exps).or_insert(0.0);
        *entry += coefficient;
        if *entry == 0.0 {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &f64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: Exponents) -> f64 {
        self.terms.get(&exps).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| (e[0] + e[1] + e[2]) as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, axis: usize) -> usize {
        self.terms.keys().map(|e| e[axis] as usize).max().unwrap_or(0)
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, x: [f64; 3]) -> f64 {
        let pw = Powers::new(x, self.degree());
        self.eval_with(&pw)
    }

    pub(crate) fn eval_with(&self, pw: &Powers) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * pw.get(0, e[0]) * pw.get(1, e[1]) * pw.get(2, e[2]))
            .sum()
    }

    pub fn partial(&self, axis: usize) -> Poly {
        let mut p = Poly::zero();
        for (e, c) in &self.terms {
            if e[axis] > 0 {
                let mut d = *e;
                d[axis] -= 1;
                p.add_term(d, c * e[axis] as f64);
            }
        }
        p
    }

    /// Antiderivative in `axis` with zero constant of integration.
    pub fn antiderivative(&self, axis: usize) -> Poly {
        let mut p = Poly::zero();
        for (e, c) in &self.terms {
            let mut d = *e;
            d[axis] += 1;
            p.add_term(d, c / d[axis] as f64);
        }
        p
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(e, c)| (*e, c * s)))
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::constant(1.0);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `x_i ← sub[i]`.
    pub fn compose(&self, sub: &[Poly; 3]) -> Poly {
        let max = [self.degree_in(0), self.degree_in(1), self.degree_in(2)];
        let powers: Vec<Vec<Poly>> = (0..3)
            .map(|axis| {
                let mut v = vec![Poly::constant(1.0)];
                for k in 1..=max[axis] {
                    let next = &v[k - 1] * &sub[axis];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let term = &(&powers[0][e[0] as usize] * &powers[1][e[1] as usize]) * &powers[2][e[2] as usize];
            out = &out + &term.scale(*c);
        }
        out
    }

    /// Exact integral over the axis-aligned box `[lo, hi]`.
    pub fn integrate_box(&self, lo: [f64; 3], hi: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = *c;
                for axis in 0..3 {
                    let k = e[axis] as i32 + 1;
                    v *= (hi[axis].powi(k) - lo[axis].powi(k)) / k as f64;
                }
                v
            })
            .sum()
    }

    /// Restriction to the plane `x_axis = value`, as a polynomial that no
    /// longer depends on `x_axis`.
    pub fn restrict(&self, axis: usize, value: f64) -> Poly {
        let mut p = Poly::zero();
        for (e, c) in &self.terms {
            let mut d = *e;
            d[axis] = 0;
            p.add_term(d, c * value.powi(e[axis] as i32));
        }
        p
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, *c);
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, -*c);
        }
        p
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                p.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        p
    }
}

/// Table of `x_i^k` for `k ≤ degree`, shared across the components of a field.
pub(crate) struct Powers {
    table: [Vec<f64>; 3],
}

impl Powers {
    pub(crate) fn new(x: [f64; 3], degree: usize) -> Self {
        let table = std::array::from_fn(|axis| {
            let mut v = Vec::with_capacity(degree + 1);
            v.push(1.0);
            for k in 1..=degree {
                v.push(v[k - 1] * x[axis]);
            }
            v
        });
        Powers { table }
    }

    #[inline]
    fn get(&self, axis: usize, k: u32) -> f64 {
        self.table[axis][k as usize]
    }
}
