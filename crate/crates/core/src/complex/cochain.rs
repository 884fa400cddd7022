use num_traits::Zero;

use crate::algebra::ThreeLieAlgebra;
use crate::basis::{to_sparse, PairIndex};
use crate::error::{Error, Result};
use crate::linalg::{LinearMap, SparseVec};
use crate::scalar::{self, Scalar};

/// Largest degree accepted by the differentials and matrix builders.
pub const MAX_DEGREE: usize = 4;

/// Largest degree a cochain may have (images of degree-`MAX_DEGREE` inputs).
pub const MAX_COCHAIN_DEGREE: usize = MAX_DEGREE + 1;

pub(crate) fn check_degree(degree: usize, max: usize) -> Result<()> {
    if degree == 0 || degree > max {
        Err(Error::DegreeOutOfRange {
            degree,
            min: 1,
            max,
        })
    } else {
        Ok(())
    }
}

/// Index arithmetic for the coefficient table of `Cⁿ(L, M)`.
///
/// A base tuple is `n − 1` pair codes followed by one basis index of `L`;
/// the flat index of `(p₁, …, p_{n−1}, ℓ, r)` is
/// `((p₁·D + p₂)·… ·n_L + ℓ)·m + r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub degree: usize,
    pub alg_dim: usize,
    pub mod_dim: usize,
    pub pairs: usize,
}

impl Shape {
    pub fn new(degree: usize, alg_dim: usize, mod_dim: usize) -> Self {
        Self {
            degree,
            alg_dim,
            mod_dim,
            pairs: alg_dim * alg_dim.saturating_sub(1) / 2,
        }
    }

    /// Number of base tuples, `D^{n−1}·n_L`.
    pub fn bases(&self) -> usize {
        self.pairs.pow((self.degree - 1) as u32) * self.alg_dim
    }

    /// Number of scalar coefficients.
    pub fn len(&self) -> usize {
        self.bases() * self.mod_dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn base_index(&self, pairs: &[usize], last: usize) -> usize {
        let mut idx = 0;
        for &p in pairs {
            idx = idx * self.pairs + p;
        }
        idx * self.alg_dim + last
    }

    pub fn decode(&self, mut base: usize) -> (Vec<usize>, usize) {
        let last = base % self.alg_dim;
        base /= self.alg_dim;
        let mut pairs = vec![0; self.degree - 1];
        for slot in pairs.iter_mut().rev() {
            *slot = base % self.pairs;
            base /= self.pairs;
        }
        (pairs, last)
    }

    /// Expands a multilinear argument list into base tuples with coefficients.
    pub fn expand(&self, slots: &[SparseVec], last: &SparseVec, mut visit: impl FnMut(usize, &Scalar)) {
        fn rec(
            shape: &Shape,
            slots: &[SparseVec],
            last: &SparseVec,
            acc: usize,
            coeff: &Scalar,
            visit: &mut dyn FnMut(usize, &Scalar),
        ) {
            match slots.split_first() {
                Some((head, rest)) => {
                    for (p, c) in head {
                        rec(shape, rest, last, acc * shape.pairs + p, &(coeff * c), visit);
                    }
                }
                None => {
                    for (l, c) in last {
                        visit(acc * shape.alg_dim + l, &(coeff * c));
                    }
                }
            }
        }
        debug_assert_eq!(slots.len() + 1, self.degree);
        rec(self, slots, last, 0, &scalar::one(), &mut visit);
    }
}

/// An element of `Cⁿ(L, M) = Hom((∧²L)^{⊗(n−1)} ⊗ L, M)`, stored densely.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    shape: Shape,
    coeffs: Vec<Scalar>,
}

impl std::fmt::Debug for Cochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let nonzero: Vec<(usize, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, scalar::format(v)))
            .collect();
        f.debug_struct("Cochain")
            .field("degree", &self.shape.degree)
            .field("alg_dim", &self.shape.alg_dim)
            .field("mod_dim", &self.shape.mod_dim)
            .field("nonzero", &nonzero)
            .finish()
    }
}

impl Cochain {
    pub fn zero(degree: usize, alg_dim: usize, mod_dim: usize) -> Result<Self> {
        check_degree(degree, MAX_COCHAIN_DEGREE)?;
        if alg_dim == 0 {
            return Err(Error::invalid("algebra dimension must be positive"));
        }
        let shape = Shape::new(degree, alg_dim, mod_dim);
        let coeffs = scalar::zeros(shape.len());
        Ok(Self { shape, coeffs })
    }

    pub fn from_coeffs(degree: usize, alg_dim: usize, mod_dim: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        let mut c = Self::zero(degree, alg_dim, mod_dim)?;
        if coeffs.len() != c.coeffs.len() {
            return Err(Error::dim(format!(
                "degree-{degree} cochain needs {} coefficients, got {}",
                c.coeffs.len(),
                coeffs.len()
            )));
        }
        c.coeffs = coeffs;
        Ok(c)
    }

    /// Degree-1 cochain from a linear map `L → M` (`m × n` matrix).
    pub fn from_linear_map(map: &LinearMap) -> Self {
        let (m, n) = (map.rows(), map.cols());
        let mut c = Self::zero(1, n, m).expect("degree 1");
        for l in 0..n {
            for r in 0..m {
                c.coeffs[l * m + r] = map.get(r, l).clone();
            }
        }
        c
    }

    /// The bracket `μ(x∧y, z) = [x, y, z]` as a degree-2 self-coefficient cochain.
    pub fn from_bracket(alg: &ThreeLieAlgebra) -> Self {
        let n = alg.dim();
        let mut c = Self::zero(2, n, n).expect("degree 2");
        let pairs = PairIndex::new(n);
        for code in 0..pairs.len() {
            let (i, j) = pairs.pair(code);
            for l in 0..n {
                let base = c.shape.base_index(&[code], l);
                for (r, v) in alg.bracket_basis_sparse(i, j, l) {
                    c.coeffs[base * n + r] = v;
                }
            }
        }
        c
    }

    /// Reads a totally antisymmetric degree-2 self-coefficient cochain as an algebra.
    pub fn to_algebra(&self) -> Result<ThreeLieAlgebra> {
        self.require_degree(2)?;
        self.require_self()?;
        if !self.is_totally_antisymmetric() {
            return Err(Error::invalid("cochain is not totally antisymmetric"));
        }
        let n = self.alg_dim();
        let pairs = PairIndex::new(n);
        let mut constants = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let code = pairs.code(i, j).expect("i < j");
                    constants.push(([i, j, k], self.value(&[code], k).to_vec()));
                }
            }
        }
        ThreeLieAlgebra::new_unchecked(n, constants)
    }

    pub fn to_linear_map(&self) -> Result<LinearMap> {
        self.require_degree(1)?;
        let (n, m) = (self.alg_dim(), self.mod_dim());
        Ok(LinearMap::from_fn(m, n, |r, l| self.coeffs[l * m + r].clone()))
    }

    pub fn degree(&self) -> usize {
        self.shape.degree
    }

    pub fn alg_dim(&self) -> usize {
        self.shape.alg_dim
    }

    pub fn mod_dim(&self) -> usize {
        self.shape.mod_dim
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        scalar::is_zero_vec(&self.coeffs)
    }

    pub fn is_self_coefficient(&self) -> bool {
        self.alg_dim() == self.mod_dim()
    }

    pub(crate) fn require_degree(&self, degree: usize) -> Result<()> {
        if self.degree() == degree {
            Ok(())
        } else {
            Err(Error::dim(format!(
                "expected a degree-{degree} cochain, got degree {}",
                self.degree()
            )))
        }
    }

    pub(crate) fn require_self(&self) -> Result<()> {
        if self.is_self_coefficient() {
            Ok(())
        } else {
            Err(Error::NotSelfCoefficient {
                alg_dim: self.alg_dim(),
                mod_dim: self.mod_dim(),
            })
        }
    }

    pub(crate) fn same_space(&self, other: &Cochain) -> Result<()> {
        if self.shape == other.shape {
            Ok(())
        } else {
            Err(Error::dim(format!(
                "cochain spaces differ: degree {} ({}→{}) vs degree {} ({}→{})",
                self.degree(),
                self.alg_dim(),
                self.mod_dim(),
                other.degree(),
                other.alg_dim(),
                other.mod_dim()
            )))
        }
    }

    /// Coefficient vector at the base tuple `(pairs, last)`.
    pub fn value(&self, pairs: &[usize], last: usize) -> &[Scalar] {
        let m = self.mod_dim();
        let base = self.shape.base_index(pairs, last);
        &self.coeffs[base * m..(base + 1) * m]
    }

    pub fn value_mut(&mut self, pairs: &[usize], last: usize) -> &mut [Scalar] {
        let m = self.mod_dim();
        let base = self.shape.base_index(pairs, last);
        &mut self.coeffs[base * m..(base + 1) * m]
    }

    pub fn set(&mut self, pairs: &[usize], last: usize, value: Vec<Scalar>) -> Result<()> {
        if value.len() != self.mod_dim() {
            return Err(Error::dim("value has wrong length"));
        }
        self.value_mut(pairs, last).clone_from_slice(&value);
        Ok(())
    }

    /// Evaluation on pair slots given in pair-code coordinates.
    pub fn eval_sparse(&self, slots: &[SparseVec], last: &SparseVec) -> Vec<Scalar> {
        let m = self.mod_dim();
        let mut out = scalar::zeros(m);
        self.shape.expand(slots, last, |base, c| {
            scalar::add_scaled(&mut out, c, &self.coeffs[base * m..(base + 1) * m]);
        });
        out
    }

    /// Multilinear evaluation `f(x₁∧y₁, …, x_{n−1}∧y_{n−1}, x)`.
    pub fn eval(&self, pairs: &[(Vec<Scalar>, Vec<Scalar>)], last: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.alg_dim();
        if pairs.len() + 1 != self.degree() {
            return Err(Error::dim(format!(
                "degree-{} cochain takes {} pair arguments, got {}",
                self.degree(),
                self.degree() - 1,
                pairs.len()
            )));
        }
        if last.len() != n || pairs.iter().any(|(x, y)| x.len() != n || y.len() != n) {
            return Err(Error::dim("argument vectors must lie in the algebra"));
        }
        let index = PairIndex::new(n);
        let slots: Vec<SparseVec> = pairs
            .iter()
            .map(|(x, y)| index.wedge(&to_sparse(x), &to_sparse(y)))
            .collect();
        Ok(self.eval_sparse(&slots, &to_sparse(last)))
    }

    /// Whether `f(x∧y, z)` is antisymmetric in all three arguments.
    pub fn is_totally_antisymmetric(&self) -> bool {
        if self.degree() != 2 {
            return false;
        }
        let n = self.alg_dim();
        let pairs = PairIndex::new(n);
        for code in 0..pairs.len() {
            let (i, j) = pairs.pair(code);
            for l in 0..n {
                let v = self.value(&[code], l);
                if l == i || l == j {
                    if !scalar::is_zero_vec(v) {
                        return false;
                    }
                    continue;
                }
                // f(e_i∧e_j, e_l) = −f(e_i∧e_l, e_j)
                let (swapped, neg) = pairs.wedge_basis(i, l).expect("distinct");
                let w = self.value(&[swapped], j);
                let ok = v.iter().zip(w).all(|(a, b)| if neg { a == b } else { *a == -b });
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.same_space(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Cochain {
            shape: self.shape.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.same_space(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Cochain {
            shape: self.shape.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, k: &Scalar) -> Cochain {
        Cochain {
            shape: self.shape.clone(),
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&scalar::int(-1))
    }

    /// `g ∘ f` for a linear map `g: M → M'`.
    pub fn post_compose(&self, g: &LinearMap) -> Result<Cochain> {
        if g.cols() != self.mod_dim() {
            return Err(Error::dim("post-composed map has wrong source dimension"));
        }
        let m = self.mod_dim();
        let m2 = g.rows();
        let mut out = Cochain::zero(self.degree(), self.alg_dim(), m2)?;
        for base in 0..self.shape.bases() {
            let v = g.apply(&self.coeffs[base * m..(base + 1) * m]);
            out.coeffs[base * m2..(base + 1) * m2].clone_from_slice(&v);
        }
        Ok(out)
    }
}

/// An element of the pair complex: `Cⁿ ⊕ Cⁿ⁻¹` for `n ≥ 2`, `C¹` for `n = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCochain {
    f: Cochain,
    fbar: Option<Cochain>,
}

impl PairCochain {
    pub fn new(f: Cochain, fbar: Option<Cochain>) -> Result<Self> {
        match (&fbar, f.degree()) {
            (None, 1) => {}
            (Some(g), d) if d >= 2 => {
                if g.degree() + 1 != d {
                    return Err(Error::dim(format!(
                        "second component must have degree {}, got {}",
                        d - 1,
                        g.degree()
                    )));
                }
                if g.alg_dim() != f.alg_dim() || g.mod_dim() != f.mod_dim() {
                    return Err(Error::dim("components act on different spaces"));
                }
            }
            (None, d) => {
                return Err(Error::dim(format!(
                    "a degree-{d} pair cochain needs a second component"
                )))
            }
            (Some(_), _) => return Err(Error::dim("a degree-1 pair cochain has no second component")),
        }
        Ok(Self { f, fbar })
    }

    pub fn zero(degree: usize, alg_dim: usize, mod_dim: usize) -> Result<Self> {
        let f = Cochain::zero(degree, alg_dim, mod_dim)?;
        let fbar = if degree >= 2 {
            Some(Cochain::zero(degree - 1, alg_dim, mod_dim)?)
        } else {
            None
        };
        Ok(Self { f, fbar })
    }

    /// Degree-1 element `f ∈ Hom(L, M)`.
    pub fn from_linear_map(map: &LinearMap) -> Self {
        Self {
            f: Cochain::from_linear_map(map),
            fbar: None,
        }
    }

    /// Degree-2 element `(ψ, χ)`.
    pub fn degree2(psi: Cochain, chi: &LinearMap) -> Result<Self> {
        Self::new(psi, Some(Cochain::from_linear_map(chi)))
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn alg_dim(&self) -> usize {
        self.f.alg_dim()
    }

    pub fn mod_dim(&self) -> usize {
        self.f.mod_dim()
    }

    pub fn f(&self) -> &Cochain {
        &self.f
    }

    pub fn fbar(&self) -> Option<&Cochain> {
        self.fbar.as_ref()
    }

    /// Dimension of the pair cochain space of this degree.
    pub fn space_dim(degree: usize, alg_dim: usize, mod_dim: usize) -> usize {
        let top = Shape::new(degree, alg_dim, mod_dim).len();
        if degree >= 2 {
            top + Shape::new(degree - 1, alg_dim, mod_dim).len()
        } else {
            top
        }
    }

    /// Coordinates in the canonical basis: the `f` block, then the `f̄` block.
    pub fn to_vector(&self) -> Vec<Scalar> {
        let mut v = self.f.coeffs().to_vec();
        if let Some(g) = &self.fbar {
            v.extend_from_slice(g.coeffs());
        }
        v
    }

    pub fn from_vector(degree: usize, alg_dim: usize, mod_dim: usize, v: &[Scalar]) -> Result<Self> {
        let top = Shape::new(degree, alg_dim, mod_dim).len();
        if v.len() != Self::space_dim(degree, alg_dim, mod_dim) {
            return Err(Error::dim(format!(
                "degree-{degree} pair cochain needs {} coordinates, got {}",
                Self::space_dim(degree, alg_dim, mod_dim),
                v.len()
            )));
        }
        let f = Cochain::from_coeffs(degree, alg_dim, mod_dim, v[..top].to_vec())?;
        let fbar = if degree >= 2 {
            Some(Cochain::from_coeffs(degree - 1, alg_dim, mod_dim, v[top..].to_vec())?)
        } else {
            None
        };
        Ok(Self { f, fbar })
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.fbar.as_ref().is_none_or(Cochain::is_zero)
    }

    pub fn sub(&self, other: &PairCochain) -> Result<PairCochain> {
        let f = self.f.sub(&other.f)?;
        let fbar = match (&self.fbar, &other.fbar) {
            (Some(a), Some(b)) => Some(a.sub(b)?),
            _ => None,
        };
        PairCochain::new(f, fbar)
    }

    pub fn add(&self, other: &PairCochain) -> Result<PairCochain> {
        let f = self.f.add(&other.f)?;
        let fbar = match (&self.fbar, &other.fbar) {
            (Some(a), Some(b)) => Some(a.add(b)?),
            _ => None,
        };
        PairCochain::new(f, fbar)
    }

    pub fn scale(&self, k: &Scalar) -> PairCochain {
        PairCochain {
            f: self.f.scale(k),
            fbar: self.fbar.as_ref().map(|g| g.scale(k)),
        }
    }
}
