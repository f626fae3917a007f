use super::poly::{Poly, Powers};
use super::{Tensor2, Tensor3, Vec3};
use std::marker::PhantomData;

/// Value type of a polynomial field, stored as a flat row-major component list.
pub trait Component: Copy {
    const LEN: usize;
    fn from_flat(values: &[f64]) -> Self;
    fn to_flat(&self) -> Vec<f64>;
}

impl Component for f64 {
    const LEN: usize = 1;
    fn from_flat(values: &[f64]) -> Self {
        values[0]
    }
    fn to_flat(&self) -> Vec<f64> {
        vec![*self]
    }
}

impl Component for Vec3 {
    const LEN: usize = 3;
    fn from_flat(values: &[f64]) -> Self {
        Vec3([values[0], values[1], values[2]])
    }
    fn to_flat(&self) -> Vec<f64> {
        self.0.to_vec()
    }
}

impl Component for Tensor2 {
    const LEN: usize = 9;
    fn from_flat(values: &[f64]) -> Self {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row.copy_from_slice(&values[3 * i..3 * i + 3]);
        }
        Tensor2(m)
    }
    fn to_flat(&self) -> Vec<f64> {
        self.0.iter().flatten().copied().collect()
    }
}

impl Component for Tensor3 {
    const LEN: usize = 27;
    fn from_flat(values: &[f64]) -> Self {
        let mut t = Tensor3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    t.0[i][j][k] = values[9 * i + 3 * j + k];
                }
            }
        }
        t
    }
    fn to_flat(&self) -> Vec<f64> {
        self.0.iter().flatten().flatten().copied().collect()
    }
}

/// Field whose every component is a polynomial in position.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyField<R: Component> {
    comps: Vec<Poly>,
    _value: PhantomData<R>,
}

impl<R: Component> PolyField<R> {
    pub fn zero() -> Self {
        PolyField::from_components(vec![Poly::zero(); R::LEN])
    }

    pub fn constant(value: R) -> Self {
        PolyField::from_components(value.to_flat().into_iter().map(Poly::constant).collect())
    }

    /// Panics if `comps.len() != R::LEN`.
    pub fn from_components(comps: Vec<Poly>) -> Self {
        assert_eq!(comps.len(), R::LEN, "component count mismatch");
        PolyField {
            comps,
            _value: PhantomData,
        }
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    /// Flat (row-major) component access.
    pub fn component(&self, flat: usize) -> &Poly {
        &self.comps[flat]
    }

    pub fn component_mut(&mut self, flat: usize) -> &mut Poly {
        &mut self.comps[flat]
    }

    pub fn degree(&self) -> usize {
        self.comps.iter().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn eval(&self, x: Vec3) -> R {
        let pw = Powers::new(x.0, self.degree());
        let flat: Vec<f64> = self.comps.iter().map(|p| p.eval_with(&pw)).collect();
        R::from_flat(&flat)
    }

    pub fn partial(&self, axis: usize) -> Self {
        PolyField::from_components(self.comps.iter().map(|p| p.partial(axis)).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        PolyField::from_components(self.comps.iter().map(|p| p.scale(s)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyField::from_components(self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        PolyField::from_components(self.comps.iter().map(|c| c * p).collect())
    }

    pub fn compose(&self, sub: &[Poly; 3]) -> Self {
        PolyField::from_components(self.comps.iter().map(|c| c.compose(sub)).collect())
    }
}

impl PolyField<Vec3> {
    pub fn from_array(c: [Poly; 3]) -> Self {
        PolyField::from_components(c.into())
    }

    /// The identity field `U(x) = x`.
    pub fn identity() -> Self {
        PolyField::from_array([Poly::var(0), Poly::var(1), Poly::var(2)])
    }

    /// `U(x) = (x·n) u0`, the linear field used by the limit constructions.
    pub fn linear_along(n: Vec3, u0: Vec3) -> Self {
        let s = Poly::affine(0.0, n.0);
        PolyField::from_array(std::array::from_fn(|i| s.scale(u0.0[i])))
    }

    pub fn dot_poly(&self, other: &Self) -> Poly {
        (0..3).fold(Poly::zero(), |acc, i| &acc + &(&self.comps[i] * &other.comps[i]))
    }

    pub fn as_array(&self) -> [Poly; 3] {
        std::array::from_fn(|i| self.comps[i].clone())
    }
}

impl PolyField<Tensor2> {
    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.comps[3 * i + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.comps[3 * i + j]
    }
}

impl PolyField<Tensor3> {
    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.comps[9 * i + 3 * j + k]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Poly {
        &mut self.comps[9 * i + 3 * j + k]
    }
}

/// `(∇U)_ij = ∂_j U_i`
pub fn grad(u: &PolyField<Vec3>) -> PolyField<Tensor2> {
    let mut comps = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            comps.push(u.component(i).partial(j));
        }
    }
    PolyField::from_components(comps)
}

/// `div W = ∂_i W_i`
pub fn div_vec(w: &PolyField<Vec3>) -> PolyField<f64> {
    let p = (0..3).fold(Poly::zero(), |acc, i| &acc + &w.component(i).partial(i));
    PolyField::from_components(vec![p])
}

/// `(div M)_i = ∂_j M_ij`
pub fn div_t2(m: &PolyField<Tensor2>) -> PolyField<Vec3> {
    PolyField::from_array(std::array::from_fn(|i| {
        (0..3).fold(Poly::zero(), |acc, j| &acc + &m.entry(i, j).partial(j))
    }))
}
