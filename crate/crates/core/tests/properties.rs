use num_rational::BigRational;
use proptest::prelude::*;
use sschr::algebra::{load_algebra, Part, CATALOG};
use sschr::coeff::{Bindings, Param, RatFunc, Scalar};
use sschr::envelope::{env_multiply, normal_order, normal_order_with, EnvelopeElement, PBWMonomial};
use sschr::shapovalov::pair;
use sschr::singular::{check_certificate, closed_form, scan, QuotientContext, SingularCertificate};
use sschr::verma::{make_module, ModuleVector, VermaModule};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..7, 1i64..4).prop_map(|(n, d)| q(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    (1i64..5, 1i64..3, any::<bool>()).prop_map(|(n, d, s)| q(if s { n } else { -n }, d))
}

fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
    (rational(), 0usize..4, 0u32..3, rational()).prop_map(|(a, v, e, b)| {
        RatFunc::from_rational(&a)
            .mul(&RatFunc::var(v).pow(e))
            .add(&RatFunc::from_rational(&b))
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (small_ratfunc(), small_ratfunc(), any::<bool>())
        .prop_map(|(e, o, odd)| Scalar::new(e, if odd { o } else { RatFunc::zero() }))
}

fn chi_sq() -> RatFunc {
    RatFunc::var(Param::M.index()).mul(&RatFunc::from_rational(&q(1, 2)))
}

fn bound_module(name: &str, values: [BigRational; 4]) -> VermaModule {
    let alg = load_algebra(name).unwrap();
    let params = make_module(&alg, &Bindings::symbolic()).unwrap().parameters().to_vec();
    let pairs: Vec<(Param, BigRational)> = params
        .into_iter()
        .map(|p| (p, values[p.index()].clone()))
        .collect();
    make_module(&alg, &Bindings::from_pairs(&pairs).unwrap()).unwrap()
}

fn module_strategy() -> impl Strategy<Value = VermaModule> {
    (0usize..CATALOG.len(), rational(), nonzero_rational(), rational(), rational())
        .prop_map(|(i, d, m, j, r)| bound_module(CATALOG[i], [d, m, j, r]))
}

fn word_strategy() -> impl Strategy<Value = (usize, Vec<prop::sample::Index>)> {
    (0usize..CATALOG.len(), prop::collection::vec(any::<prop::sample::Index>(), 0..6))
}

fn word(alg_index: usize, picks: &[prop::sample::Index]) -> Vec<usize> {
    let n = load_algebra(CATALOG[alg_index]).unwrap().len();
    picks.iter().map(|p| p.index(n)).collect()
}

/// A random combination of sector basis vectors at one level.
fn sector_combination(module: &VermaModule, level: u32, seed: &[i64]) -> ModuleVector {
    let mut v = ModuleVector::zero();
    for (mono, k) in module.basis_at_level(level).iter().zip(seed.iter().cycle()) {
        v.add_assign(&module.scalar_mul(&Scalar::from_int(*k), &module.sector_vector(mono)));
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        let s = chi_sq();
        prop_assert_eq!(a.mul_with(&b, &s), b.mul_with(&a, &s));
        prop_assert_eq!(a.mul_with(&b, &s).mul_with(&c, &s), a.mul_with(&b.mul_with(&c, &s), &s));
        prop_assert_eq!(
            a.mul_with(&b.add(&c), &s),
            a.mul_with(&b, &s).add(&a.mul_with(&c, &s))
        );
        prop_assert_eq!(a.add(&Scalar::zero()), a.clone());
        prop_assert!(a.sub(&a).is_zero());
        let chi = Scalar::chi();
        prop_assert_eq!(chi.mul_with(&chi, &s).mul_with(&a, &s), a.scale(&s));
    }

    #[test]
    fn nonzero_ratfuncs_are_invertible(a in small_ratfunc()) {
        prop_assume!(!a.is_zero());
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
    }

    #[test]
    fn normal_form_is_independent_of_rewrite_order(
        (alg_index, picks) in word_strategy(),
        choices in prop::collection::vec(any::<usize>(), 64),
    ) {
        let alg = load_algebra(CATALOG[alg_index]).unwrap();
        let w = word(alg_index, &picks);
        let mut k = 0;
        let random = normal_order_with(&alg, &w, |positions| {
            k += 1;
            choices[k % choices.len()] % positions.len()
        });
        prop_assert_eq!(random, normal_order(&alg, &w));
    }

    #[test]
    fn envelope_product_is_associative(
        (alg_index, a) in word_strategy(),
        b in prop::collection::vec(any::<prop::sample::Index>(), 0..3),
        c in prop::collection::vec(any::<prop::sample::Index>(), 0..3),
    ) {
        let alg = load_algebra(CATALOG[alg_index]).unwrap();
        let x = normal_order(&alg, &word(alg_index, &a[..a.len().min(3)]));
        let y = normal_order(&alg, &word(alg_index, &b));
        let z = normal_order(&alg, &word(alg_index, &c));
        prop_assert_eq!(
            env_multiply(&alg, &env_multiply(&alg, &x, &y), &z),
            env_multiply(&alg, &x, &env_multiply(&alg, &y, &z))
        );
    }

    #[test]
    fn normal_ordering_keeps_degree_and_parity((alg_index, picks) in word_strategy()) {
        let alg = load_algebra(CATALOG[alg_index]).unwrap();
        let w = word(alg_index, &picks);
        let source = PBWMonomial::from_exponents({
            let mut e = vec![0u32; alg.len()];
            for &g in &w {
                e[g] += 1;
            }
            e
        });
        let result: EnvelopeElement = normal_order(&alg, &w);
        for (m, _) in result.terms() {
            prop_assert!(m.is_pbw(&alg));
            prop_assert_eq!(m.degree(&alg), source.degree(&alg));
            prop_assert_eq!(m.parity(&alg), source.parity(&alg));
        }
    }

    #[test]
    fn module_respects_brackets(
        module in module_strategy(),
        x in any::<prop::sample::Index>(),
        y in any::<prop::sample::Index>(),
        level in 0u32..3,
        seed in prop::collection::vec(-3i64..4, 1..5),
    ) {
        let alg = module.algebra();
        let (x, y) = (x.index(alg.len()), y.index(alg.len()));
        let v = sector_combination(&module, level, &seed);
        let xy = module.act(x, &module.act(y, &v));
        let yx = module.act(y, &module.act(x, &v));
        let sign = Scalar::from_int(-sschr::algebra::koszul(alg.parity(x), alg.parity(y)));
        let lhs = xy.add(&module.scalar_mul(&sign, &yx));
        prop_assert_eq!(lhs, module.act_lie(alg.bracket_gens(x, y), &v));
    }

    #[test]
    fn dilatation_measures_level(module in module_strategy(), level in 0u32..4, pick in any::<prop::sample::Index>()) {
        let basis = module.basis_at_level(level);
        let mono = pick.get(&basis);
        let v = module.sector_vector(mono);
        let dil = module.algebra().gen("D").unwrap();
        let d = module.bindings().get(Param::D).unwrap().clone();
        let expected = Scalar::from_rational(&(BigRational::from_integer(level.into()) - d));
        prop_assert_eq!(module.act(dil, &v), module.scalar_mul(&expected, &v));
    }

    #[test]
    fn contravariance_on_all_vectors(
        module in module_strategy(),
        x in any::<prop::sample::Index>(),
        level in 0u32..3,
        pick in any::<prop::sample::Index>(),
        seed in prop::collection::vec(-3i64..4, 1..6),
    ) {
        let alg = module.algebra();
        let x = x.index(alg.len());
        let basis = module.basis_at_level(level);
        let u = module.basis_vector(pick.get(&basis));
        let target = (level as i32 + alg.degree(x)[0]).max(0) as u32;
        let v = sector_combination(&module, target, &seed);
        prop_assert_eq!(
            pair(&module, &module.act(x, &u), &v),
            pair(&module, &u, &module.act(alg.omega(x).unwrap(), &v))
        );
    }
}

#[test]
fn zero_part_is_diagonal_on_v0() {
    for name in CATALOG {
        let m = bound_module(name, [q(1, 3), q(2, 1), q(1, 2), q(-1, 1)]);
        let alg = m.algebra();
        for g in alg.parts(Part::Zero) {
            let image = m.act(g, &m.v0());
            assert_eq!(image, m.scalar_mul(m.eigenvalue(g).unwrap(), &m.v0()), "{name}");
        }
        for g in m.annihilators() {
            assert!(m.act(g, &m.v0()).is_zero(), "{name}");
        }
    }
}

/// The submodule generated by a singular vector is stable under every
/// generator, weight space by weight space.
#[test]
fn submodules_are_invariant() {
    let cases = [
        bound_module("s11", [q(1, 2), q(1, 1), q(0, 1), q(0, 1)]),
        bound_module("s12", [q(1, 2), q(1, 1), q(0, 1), q(1, 1)]),
        bound_module("s21", [q(0, 1), q(1, 1), q(1, 1), q(0, 1)]),
    ];
    for m in &cases {
        let v = closed_form(m).unwrap().vector;
        let ctx = QuotientContext::new(m, &v).unwrap();
        let alg = m.algebra();
        let base = m.degree_of(&v).unwrap()[0] as u32;
        for level in base..base + 2 {
            for degree in m.weight_spaces(level).keys() {
                for w in ctx.submodule_basis(degree) {
                    for g in 0..alg.len() {
                        assert!(ctx.contains(&m.act(g, &w)), "{} level {level}", alg.name());
                    }
                }
            }
        }
    }
}

#[test]
fn certificates_survive_json_and_detect_tampering() {
    let m = bound_module("s21", [q(0, 1), q(3, 2), q(0, 1), q(0, 1)]);
    let certs = scan(&m, 3, None).unwrap();
    assert_eq!(certs.len(), 1);
    let text = certs[0].to_json();
    let back = SingularCertificate::from_json(&text).unwrap();
    assert_eq!(back.to_json(), text);
    assert!(check_certificate(&back).unwrap().passed);

    let mut tampered = back.clone();
    tampered.vector.pop();
    let report = check_certificate(&tampered).unwrap();
    assert!(!report.passed);
    assert!(!report.problems.is_empty());
}
