#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trider_core::complex::{Cochain, PairCochain};
use trider_core::scalar::{frac, int, Scalar};
use trider_core::LinearMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational, zero about a third of the time.
pub fn small(rng: &mut impl Rng) -> Scalar {
    match rng.gen_range(0..3) {
        0 => int(0),
        1 => int(rng.gen_range(-3..=3)),
        _ => frac(rng.gen_range(-4..=4), rng.gen_range(1..=3)),
    }
}

pub fn random_vec(rng: &mut impl Rng, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| small(rng)).collect()
}

pub fn random_cochain(rng: &mut impl Rng, degree: usize, n: usize, m: usize) -> Cochain {
    let len = trider_core::complex::Shape::new(degree, n, m).len();
    Cochain::from_coeffs(degree, n, m, random_vec(rng, len)).unwrap()
}

pub fn random_pair_cochain(rng: &mut impl Rng, degree: usize, n: usize, m: usize) -> PairCochain {
    let len = PairCochain::space_dim(degree, n, m);
    PairCochain::from_vector(degree, n, m, &random_vec(rng, len)).unwrap()
}

pub fn random_map(rng: &mut impl Rng, rows: usize, cols: usize) -> LinearMap {
    LinearMap::new(rows, cols, random_vec(rng, rows * cols)).unwrap()
}

pub fn random_invertible(rng: &mut impl Rng, n: usize) -> LinearMap {
    loop {
        let g = random_map(rng, n, n);
        if g.inverse().is_some() {
            return g;
        }
    }
}

/// Totally antisymmetric degree-2 cochain from values on increasing triples.
pub fn antisymmetric_cochain(n: usize, m: usize, mut value: impl FnMut(usize, usize, usize) -> Vec<Scalar>) -> Cochain {
    let pairs = trider_core::basis::PairIndex::new(n);
    let mut f = Cochain::zero(2, n, m).unwrap();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let v = value(x, y, z);
                for (a, b, c, s) in [(x, y, z, 1), (x, z, y, -1), (y, z, x, 1)] {
                    let code = pairs.code(a, b).unwrap();
                    f.set(&[code], c, v.iter().map(|t| t * int(s)).collect()).unwrap();
                }
            }
        }
    }
    f
}

pub fn random_antisymmetric(rng: &mut impl Rng, n: usize, m: usize) -> Cochain {
    antisymmetric_cochain(n, m, |_, _, _| random_vec(rng, m))
}

/// Dense `[i][j][k] → vector` table of a bracket, filled by explicit
/// permutation of each stored triple.
pub struct FullTensor {
    pub n: usize,
    pub t: Vec<Vec<Scalar>>,
}

impl FullTensor {
    pub fn of(alg: &trider_core::ThreeLieAlgebra) -> Self {
        let n = alg.dim();
        let mut t = vec![vec![int(0); n]; n * n * n];
        for (key, v) in alg.constants() {
            let [i, j, k] = *key;
            for (p, s) in [
                ([i, j, k], 1),
                ([j, k, i], 1),
                ([k, i, j], 1),
                ([j, i, k], -1),
                ([i, k, j], -1),
                ([k, j, i], -1),
            ] {
                t[(p[0] * n + p[1]) * n + p[2]] = v.iter().map(|x| x * int(s)).collect();
            }
        }
        Self { n, t }
    }

    pub fn basis(&self, i: usize, j: usize, k: usize) -> &[Scalar] {
        &self.t[(i * self.n + j) * self.n + k]
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let n = self.n;
        let mut out = vec![int(0); n];
        for i in 0..n {
            if x[i] == int(0) {
                continue;
            }
            for j in 0..n {
                if y[j] == int(0) {
                    continue;
                }
                for k in 0..n {
                    if z[k] == int(0) {
                        continue;
                    }
                    let c = &x[i] * &y[j] * &z[k];
                    for (o, b) in out.iter_mut().zip(self.basis(i, j, k)) {
                        *o += &c * b;
                    }
                }
            }
        }
        out
    }
}

pub fn e(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![int(0); n];
    v[i] = int(1);
    v
}

pub fn vadd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Fundamental identity on all `n⁵` basis tuples; returns the failing count.
pub fn fi_failures(t: &FullTensor) -> usize {
    let n = t.n;
    let mut bad = 0;
    for x in 0..n {
        for y in 0..n {
            for u in 0..n {
                for v in 0..n {
                    for w in 0..n {
                        let (ex, ey, eu, ev, ew) = (e(n, x), e(n, y), e(n, u), e(n, v), e(n, w));
                        let lhs = t.eval(&ex, &ey, t.basis(u, v, w));
                        let r1 = t.eval(t.basis(x, y, u), &ev, &ew);
                        let r2 = t.eval(&eu, t.basis(x, y, v), &ew);
                        let r3 = t.eval(&eu, &ev, t.basis(x, y, w));
                        if lhs != vadd(&vadd(&r1, &r2), &r3) {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    bad
}

/// `φ[x,y,z] = [φx,y,z] + [x,φy,z] + [x,y,φz]` on all basis triples.
pub fn is_derivation_oracle(t: &FullTensor, phi: &LinearMap) -> bool {
    let n = t.n;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = phi.apply(t.basis(x, y, z));
                let (ex, ey, ez) = (e(n, x), e(n, y), e(n, z));
                let rhs = vadd(
                    &vadd(&t.eval(&phi.column(x), &ey, &ez), &t.eval(&ex, &phi.column(y), &ez)),
                    &t.eval(&ex, &ey, &phi.column(z)),
                );
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Rank by dense fraction-free (Bareiss) elimination, choosing among all
/// remaining rows the pivot of largest absolute value.
pub fn naive_rank(rows: &[Vec<Scalar>]) -> usize {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == a.len() {
            break;
        }
        let best = (rank..a.len())
            .filter(|&r| !a[r][c].is_zero())
            .max_by(|&r, &s| a[r][c].abs().cmp(&a[s][c].abs()).then(s.cmp(&r)));
        let Some(p) = best else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for k in c..cols {
                row[k] = (&pivot * &row[k] - &lead * &pivot_row[k]) / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Random rational combination of infinitesimal cocycles.
pub fn random_combination(rng: &mut impl Rng, basis: &[(Cochain, LinearMap)], n: usize) -> (Cochain, LinearMap) {
    let mut mu = Cochain::zero(2, n, n).unwrap();
    let mut phi = LinearMap::zeros(n, n);
    for (m, p) in basis {
        let c = small(rng);
        mu = mu.add(&m.scale(&c)).unwrap();
        phi = phi.add(&p.scale(&c)).unwrap();
    }
    (mu, phi)
}

/// A valid deformation of order `order` (1 or 2): either a formal change of
/// basis of the constant family, or built term by term from cocycles.
pub fn random_deformation(
    rng: &mut impl Rng,
    pair: &trider_core::LieDerPair,
    cocycles: &[(Cochain, LinearMap)],
    order: usize,
) -> trider_core::deformations::Deformation {
    use trider_core::deformations::{apply_equivalence, extend_deformation, Deformation, FormalIso};
    let n = pair.dim();
    if rng.gen_bool(0.3) {
        let iso = FormalIso::new(n, (0..order).map(|_| random_map(rng, n, n)).collect()).unwrap();
        return apply_equivalence(&iso, &Deformation::constant(pair.clone(), order).unwrap()).unwrap();
    }
    for _ in 0..10 {
        let (mu, phi) = random_combination(rng, cocycles, n);
        let mut d = Deformation::new(pair.clone(), vec![mu], vec![phi]).unwrap();
        while d.order() < order {
            let Some((mu, phi)) = extend_deformation(&d).unwrap() else { break };
            let (dm, dp) = random_combination(rng, cocycles, n);
            d = d.extended(mu.add(&dm).unwrap(), phi.add(&dp).unwrap()).unwrap();
        }
        if d.order() == order {
            return d;
        }
    }
    Deformation::constant(pair.clone(), order).unwrap()
}
