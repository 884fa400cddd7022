mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use trider_core::complex::{bracket, d, delta, pair_d, Cochain};
use trider_core::deformations::{
    antisymmetric_cocycles, apply_equivalence, infinitesimal, obstruction, Deformation, FormalIso, Infinitesimal,
};
use trider_core::scalar::sign;
use trider_core::{
    betti, fixtures, is_coboundary, is_cocycle, semidirect, solve, DerModule, LieDerPair, LinearMap, PairCochain,
    QMatrix, Representation,
};

fn pairs() -> Vec<(&'static str, LieDerPair)> {
    let mut v = fixtures::standard_pairs();
    v.push(("simple4", fixtures::simple4_pair()));
    v.push(("solvable3", fixtures::solvable3_pair()));
    v
}

fn pick(seed: u64) -> (&'static str, LieDerPair) {
    let all = pairs();
    all[(seed % all.len() as u64) as usize].clone()
}

fn dermods(pair: &LieDerPair, rng: &mut impl Rng) -> Vec<DerModule> {
    let m = rng.gen_range(1..=2);
    vec![
        DerModule::adjoint(pair),
        DerModule::trivial(pair, random_map(rng, m, m)).unwrap(),
    ]
}

fn mu(pair: &LieDerPair) -> Cochain {
    Cochain::from_bracket(pair.algebra())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fundamental_identity_on_random_vectors(seed in any::<u64>()) {
        let (name, pair) = pick(seed);
        let alg = pair.algebra();
        let n = alg.dim();
        let mut rng = rng(seed);
        let [x, y, u, v, w]: [Vec<_>; 5] = std::array::from_fn(|_| random_vec(&mut rng, n));
        let lhs = alg.bracket(&x, &y, &alg.bracket(&u, &v, &w));
        let rhs = vadd(
            &vadd(&alg.bracket(&alg.bracket(&x, &y, &u), &v, &w), &alg.bracket(&u, &alg.bracket(&x, &y, &v), &w)),
            &alg.bracket(&u, &v, &alg.bracket(&x, &y, &w)),
        );
        prop_assert_eq!(lhs, rhs, "{}", name);
    }

    #[test]
    fn pair_differential_squares_to_zero(seed in any::<u64>(), degree in 1usize..=3) {
        let (name, pair) = pick(seed);
        let mut rng = rng(seed);
        for dm in dermods(&pair, &mut rng) {
            let pc = random_pair_cochain(&mut rng, degree, pair.dim(), dm.mod_dim());
            let dd = pair_d(&pair, &dm, &pair_d(&pair, &dm, &pc).unwrap()).unwrap();
            prop_assert!(dd.is_zero(), "{} degree {}", name, degree);
        }
    }

    #[test]
    fn d_commutes_with_delta(seed in any::<u64>(), degree in 1usize..=3) {
        let (name, pair) = pick(seed);
        let mut rng = rng(seed);
        for dm in dermods(&pair, &mut rng) {
            let f = random_cochain(&mut rng, degree, pair.dim(), dm.mod_dim());
            let alg = pair.algebra();
            let lhs = d(alg, dm.rep(), &delta(&pair, &dm, &f).unwrap()).unwrap();
            let rhs = delta(&pair, &dm, &d(alg, dm.rep(), &f).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs, "{} degree {}", name, degree);
        }
    }

    #[test]
    fn differentials_are_brackets(seed in any::<u64>(), degree in 1usize..=3) {
        let (name, pair) = pick(seed);
        let mut rng = rng(seed);
        let n = pair.dim();
        let adj = DerModule::adjoint(&pair);
        let f = random_cochain(&mut rng, degree, n, n);
        let df = d(pair.algebra(), adj.rep(), &f).unwrap();
        prop_assert_eq!(&df, &bracket(&mu(&pair), &f).unwrap().scale(&sign(degree)), "{} d", name);
        let phi = Cochain::from_linear_map(pair.phi());
        prop_assert_eq!(delta(&pair, &adj, &f).unwrap(), bracket(&phi, &f).unwrap(), "{} delta", name);
    }

    #[test]
    fn bracket_is_graded_antisymmetric_and_jacobi(seed in any::<u64>(), a in 1usize..=2, b in 1usize..=2, c in 1usize..=2) {
        let mut rng = rng(seed);
        let n = rng.gen_range(2..=3);
        let f = random_cochain(&mut rng, a, n, n);
        let g = random_cochain(&mut rng, b, n, n);
        let h = random_cochain(&mut rng, c, n, n);
        let (p, q) = (a - 1, b - 1);
        let fg = bracket(&f, &g).unwrap();
        prop_assert_eq!(&fg, &bracket(&g, &f).unwrap().scale(&sign(p * q + 1)));
        let lhs = bracket(&f, &bracket(&g, &h).unwrap()).unwrap();
        let rhs = bracket(&fg, &h)
            .unwrap()
            .add(&bracket(&g, &bracket(&f, &h).unwrap()).unwrap().scale(&sign(p * q)))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn solve_recovers_images(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (r, c) = (rng.gen_range(1..=15), rng.gen_range(1..=15));
        let m = QMatrix::from_dense(&random_map(&mut rng, r, c));
        let b = m.apply(&random_vec(&mut rng, c));
        let x = solve(&m, &b);
        prop_assert!(x.is_some());
        prop_assert_eq!(m.apply(&x.unwrap()), b);
    }

    #[test]
    fn betti_is_invariant_under_module_rebasing(seed in any::<u64>(), degree in 1usize..=2) {
        let (name, pair) = pick(seed);
        let mut rng = rng(seed);
        let adj = DerModule::adjoint(&pair);
        let n = pair.dim();
        let g = random_invertible(&mut rng, n);
        let ginv = g.inverse().unwrap();
        let conj = |a: &LinearMap| g.compose(a).unwrap().compose(&ginv).unwrap();
        let rho = adj.rep().matrices().iter().map(conj).collect();
        let moved = DerModule::new(&pair, Representation::new(n, n, rho).unwrap(), conj(adj.phi_m())).unwrap();
        prop_assert_eq!(
            betti(&pair, &adj, degree, false).unwrap().betti,
            betti(&pair, &moved, degree, false).unwrap().betti,
            "{}", name
        );
    }
}

#[test]
fn structure_cochains_are_maurer_cartan() {
    for (name, pair) in pairs() {
        let m = mu(&pair);
        assert!(bracket(&m, &m).unwrap().is_zero(), "{name}");
        assert!(bracket(&Cochain::from_linear_map(pair.phi()), &m).unwrap().is_zero(), "{name}");
    }
}

#[test]
fn semidirect_products_are_pairs() {
    let mut rng = rng(21);
    for (name, pair) in pairs() {
        for dm in dermods(&pair, &mut rng) {
            let total = semidirect(&pair, &dm).unwrap();
            let t = FullTensor::of(total.algebra());
            assert_eq!(fi_failures(&t), 0, "{name}");
            assert!(is_derivation_oracle(&t, total.phi()), "{name}");
        }
        let sd = semidirect(&pair, &DerModule::adjoint(&pair)).unwrap();
        assert_eq!(sd.dim(), 2 * pair.dim());
    }
}

fn bracket_form_fails_at(d: &Deformation) -> Option<usize> {
    for k in 1..=d.order() {
        let n = d.base().dim();
        let mut mm = Cochain::zero(3, n, n).unwrap();
        let mut pm = Cochain::zero(2, n, n).unwrap();
        for i in 0..=k {
            let (mu_i, phi_i) = d.term(i);
            let (mu_j, _) = d.term(k - i);
            mm = mm.add(&bracket(&mu_i, &mu_j).unwrap()).unwrap();
            pm = pm.add(&bracket(&Cochain::from_linear_map(&phi_i), &mu_j).unwrap()).unwrap();
        }
        if !mm.is_zero() || !pm.is_zero() {
            return Some(k);
        }
    }
    None
}

#[test]
fn deformation_equations_match_bracket_form() {
    let mut rng = rng(22);
    for (name, pair) in pairs().into_iter().filter(|(_, p)| p.dim() <= 3) {
        let n = pair.dim();
        let cocycles = antisymmetric_cocycles(&pair).unwrap();
        for trial in 0..12 {
            let mut d = random_deformation(&mut rng, &pair, &cocycles, 2);
            if trial % 2 == 1 {
                let (m2, p2) = d.term(2);
                d = Deformation::new(
                    pair.clone(),
                    vec![d.term(1).0, m2.add(&random_antisymmetric(&mut rng, n, n)).unwrap()],
                    vec![d.term(1).1, p2.add(&random_map(&mut rng, n, n)).unwrap()],
                )
                .unwrap();
            }
            assert_eq!(d.validate(10).first_failing_order, bracket_form_fails_at(&d), "{name}");
        }
    }
}

#[test]
fn equivalences_act_as_a_group() {
    let mut rng = rng(23);
    for (name, pair) in pairs() {
        let n = pair.dim();
        let cocycles = antisymmetric_cocycles(&pair).unwrap();
        for order in 1..=3 {
            let d = random_deformation(&mut rng, &pair, &cocycles, order.min(2));
            let d = if order == 3 {
                let mut d = d;
                while d.order() < 3 {
                    d = d.extended(Cochain::zero(2, n, n).unwrap(), LinearMap::zeros(n, n)).unwrap();
                }
                d
            } else {
                d
            };
            if !d.validate(1).is_ok() {
                continue;
            }
            let order = d.order();
            assert_eq!(apply_equivalence(&FormalIso::identity(n, order), &d).unwrap(), d, "{name}");
            let a = FormalIso::new(n, (0..order).map(|_| random_map(&mut rng, n, n)).collect()).unwrap();
            let b = FormalIso::new(n, (0..order).map(|_| random_map(&mut rng, n, n)).collect()).unwrap();
            let step = apply_equivalence(&a, &apply_equivalence(&b, &d).unwrap()).unwrap();
            assert_eq!(step, apply_equivalence(&a.compose(&b).unwrap(), &d).unwrap(), "{name}");
            assert!(a.compose(&a.inverse()).unwrap().is_identity(), "{name}");
            assert!(apply_equivalence(&a, &d).unwrap().validate(1).is_ok(), "{name}");
        }
    }
}

#[test]
fn equivalent_infinitesimals_are_cohomologous() {
    let mut rng = rng(24);
    for (name, pair) in pairs() {
        let n = pair.dim();
        let adj = DerModule::adjoint(&pair);
        let cocycles = antisymmetric_cocycles(&pair).unwrap();
        for _ in 0..4 {
            let d = random_deformation(&mut rng, &pair, &cocycles, 1);
            let iso = FormalIso::new(n, vec![random_map(&mut rng, n, n)]).unwrap();
            let moved = apply_equivalence(&iso, &d).unwrap();
            let lin = |d: &Deformation| {
                let (m, p) = d.term(1);
                PairCochain::degree2(m, &p).unwrap()
            };
            let diff = lin(&moved).sub(&lin(&d)).unwrap();
            assert!(is_cocycle(&pair, &adj, &lin(&d)).unwrap(), "{name}");
            assert!(is_coboundary(&pair, &adj, &diff).unwrap().is_some(), "{name}");
            if let Infinitesimal::Term { is_cocycle, .. } = infinitesimal(&moved).unwrap() {
                assert!(is_cocycle, "{name}");
            }
        }
    }
}

#[test]
fn obstructions_are_cocycles() {
    let mut rng = rng(25);
    for (name, pair) in pairs() {
        let cocycles = antisymmetric_cocycles(&pair).unwrap();
        for order in 1..=2 {
            let d = random_deformation(&mut rng, &pair, &cocycles, order);
            assert!(obstruction(&d).unwrap().is_cocycle, "{name} order {order}");
        }
    }
}

#[test]
fn random_deformations_are_valid() {
    let mut rng = rng(26);
    for (name, pair) in pairs() {
        let cocycles = antisymmetric_cocycles(&pair).unwrap();
        for order in 1..=2 {
            let d = random_deformation(&mut rng, &pair, &cocycles, order);
            let check = d.validate(5);
            assert!(check.is_ok(), "{name}: {}", check.report);
        }
    }
}
