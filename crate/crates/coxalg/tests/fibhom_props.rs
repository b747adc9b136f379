use coxalg::fibhom::*;
use coxalg::z2::BitMatrix;
use coxalg::{Error, HomologyClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn m(rows: &[&[u8]]) -> BitMatrix {
    BitMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn torus() -> Presentation {
    let mut p = Presentation::new(vec!["xi".into(), "eta".into()], vec![]).unwrap();
    let r = p.parse_word("[xi,eta]").unwrap();
    p.relators.push(r);
    p
}

fn f_eta() -> BitMatrix {
    m(&[&[1, 1], &[1, 0]])
}

fn random_matrix(n: usize, rng: &mut impl Rng) -> BitMatrix {
    loop {
        let rows: Vec<Vec<u8>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..2)).collect())
            .collect();
        let a = BitMatrix::from_rows(&rows);
        if a.inverse().is_some() {
            return a;
        }
    }
}

fn random_word(gens: usize, len: usize, rng: &mut impl Rng) -> Word {
    (0..len)
        .map(|_| {
            (
                rng.gen_range(0..gens),
                if rng.gen_bool(0.5) { 1 } else { -1 },
            )
        })
        .collect()
}

fn random_vec(n: usize, rng: &mut impl Rng) -> Vec<bool> {
    (0..n).map(|_| rng.gen_bool(0.5)).collect()
}

fn order(a: &BitMatrix) -> usize {
    let id = BitMatrix::identity(a.rows());
    let mut p = a.clone();
    let mut k = 1;
    while p != id {
        p = p.mul(a).unwrap();
        k += 1;
    }
    k
}

/// A random presentation whose relators all act trivially: powers `w^{ord w}`.
fn random_module_presentation(rng: &mut impl Rng) -> (Presentation, LocalSystem) {
    let gens = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=4);
    let ls = LocalSystem::new(n, (0..gens).map(|_| random_matrix(n, rng)).collect()).unwrap();
    let names = (0..gens).map(|i| format!("x{i}")).collect();
    let mut relators = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let w = random_word(gens, rng.gen_range(1..=4), rng);
        let k = order(&ls.word_matrix(&w).unwrap());
        relators.push(w.repeat(k));
    }
    (Presentation::new(names, relators).unwrap(), ls)
}

#[test]
fn parsing() {
    let p = Presentation::from_json(
        r#"{"generators": ["x", "y", "z"], "relators": ["[x,y]z", "x^3 y^-2"]}"#,
    )
    .unwrap();
    assert_eq!(
        p.relators[0],
        vec![(0, 1), (1, 1), (0, -1), (1, -1), (2, 1)]
    );
    assert_eq!(
        p.relators[1],
        vec![(0, 1), (0, 1), (0, 1), (1, -1), (1, -1)]
    );
    assert!(matches!(
        Presentation::from_json(r#"{"generators": ["x"], "relators": ["y"]}"#),
        Err(Error::UnknownGenerator(_))
    ));
    assert!(Presentation::from_json("{").is_err());
    assert!(p.parse_word("[x,y").is_err());
}

#[test]
fn boundary_examples() {
    let ls = LocalSystem::new(2, vec![BitMatrix::identity(2), f_eta()]).unwrap();
    let e0 = [true, false];
    assert_eq!(boundary1(&ls, 0, &e0).unwrap(), vec![false, false]);
    // F_η e0 = (1,1), so F_η e0 - e0 = (0,1)
    assert_eq!(boundary1(&ls, 1, &e0).unwrap(), vec![false, true]);
    assert_eq!(
        boundary1(&ls, 2, &e0),
        Err(Error::UnknownGenerator("#2".into()))
    );
    assert!(boundary2(&ls, &[], &e0).unwrap().is_zero());
    assert_eq!(
        boundary2(&ls, &[(1, 1)], &e0).unwrap(),
        Chain1::single(2, 1, &e0)
    );
    assert!(LocalSystem::new(2, vec![m(&[&[1, 1], &[1, 1]])]).is_err());
}

#[test]
fn commutator_expansion() {
    // ∂₂([ξ,η] ⊗ m) = ξ ⊗ (η-1)ξ⁻¹η⁻¹m + η ⊗ (1-ξ)ξ⁻¹η⁻¹m
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let p = torus();
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let (x, y) = (random_matrix(n, &mut rng), random_matrix(n, &mut rng));
        let ls = LocalSystem::new(n, vec![x.clone(), y.clone()]).unwrap();
        let v = random_vec(n, &mut rng);
        let base = x
            .inverse()
            .unwrap()
            .mul(&y.inverse().unwrap())
            .unwrap()
            .mul_vec(&v);
        let id = BitMatrix::identity(n);
        let mut expected = Chain1::zero(2, n);
        expected.add_at(0, &y.add(&id).mul_vec(&base));
        expected.add_at(1, &x.add(&id).mul_vec(&base));
        assert_eq!(boundary2(&ls, &p.relators[0], &v).unwrap(), expected);
    }
}

#[test]
fn chain_complex_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..200 {
        let gens = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=4);
        let ls =
            LocalSystem::new(n, (0..gens).map(|_| random_matrix(n, &mut rng)).collect()).unwrap();
        let w = random_word(gens, rng.gen_range(0..=12), &mut rng);
        let v = random_vec(n, &mut rng);
        // ∂₁∂₂(w ⊗ m) = wm - m, which vanishes exactly when w acts trivially on m
        let lhs = boundary1_chain(&ls, &boundary2(&ls, &w, &v).unwrap()).unwrap();
        let mut rhs = ls.act(&w, &v).unwrap();
        rhs.iter_mut().zip(&v).for_each(|(a, b)| *a ^= b);
        assert_eq!(lhs, rhs);
    }
    for _ in 0..200 {
        let (p, ls) = random_module_presentation(&mut rng);
        let prod = d1_matrix(&p, &ls)
            .unwrap()
            .mul(&d2_matrix(&p, &ls).unwrap())
            .unwrap();
        assert!(prod.is_zero());
    }
}

#[test]
fn homology_examples() {
    let ls = LocalSystem::new(2, vec![BitMatrix::identity(2), f_eta()]).unwrap();
    assert_eq!(homology1(&torus(), &ls).unwrap().dim, 0);
    for k in 1..=4 {
        let free = Presentation::new((0..k).map(|i| format!("x{i}")).collect(), vec![]).unwrap();
        assert_eq!(
            homology1(&free, &LocalSystem::trivial(k, 1)).unwrap().dim,
            k
        );
    }
    let cyclic = Presentation::new(vec!["x".into()], vec![vec![(0, 1)]]).unwrap();
    assert_eq!(
        homology1(&cyclic, &LocalSystem::trivial(1, 1)).unwrap().dim,
        0
    );
    // H₁(T², Z/2) = (Z/2)²
    let h = homology1(&torus(), &LocalSystem::trivial(2, 1)).unwrap();
    assert_eq!(h.dim, 2);
    let ls = LocalSystem::trivial(2, 1);
    assert!(h
        .cycles
        .iter()
        .all(|c| boundary1_chain(&ls, c).unwrap().iter().all(|&b| !b)));
}

#[test]
fn cross_homomorphism_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let gens = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=4);
        let ls =
            LocalSystem::new(n, (0..gens).map(|_| random_matrix(n, &mut rng)).collect()).unwrap();
        let assignment: Vec<Vec<bool>> = (0..gens).map(|_| random_vec(n, &mut rng)).collect();
        assert!(fox_cross_hom(&ls, &[], &assignment)
            .unwrap()
            .iter()
            .all(|&b| !b));
        let a = random_word(gens, rng.gen_range(0..7), &mut rng);
        let b = random_word(gens, rng.gen_range(0..7), &mut rng);
        let ab: Word = a.iter().chain(&b).copied().collect();
        let mut expected = fox_cross_hom(&ls, &a, &assignment).unwrap();
        let tail = ls
            .act(&a, &fox_cross_hom(&ls, &b, &assignment).unwrap())
            .unwrap();
        expected.iter_mut().zip(&tail).for_each(|(x, y)| *x ^= y);
        assert_eq!(fox_cross_hom(&ls, &ab, &assignment).unwrap(), expected);
        // φ(w w⁻¹) = 0
        let mut ww = a.clone();
        ww.extend(inverse_word(&a));
        assert!(fox_cross_hom(&ls, &ww, &assignment)
            .unwrap()
            .iter()
            .all(|&b| !b));
    }
}

#[test]
fn fox_coboundary_is_transpose_of_boundary2() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..200 {
        let (p, ls) = random_module_presentation(&mut rng);
        let d2 = d2_matrix(&p, &ls).unwrap();
        assert_eq!(fox_coboundary(&p, &ls).unwrap(), d2.transpose());
    }
    let ls = LocalSystem::new(2, vec![BitMatrix::identity(2), f_eta()]).unwrap();
    assert_eq!(
        fox_coboundary(&torus(), &ls).unwrap(),
        d2_matrix(&torus(), &ls).unwrap().transpose()
    );
}

fn section_example(mu: HomologyClass) -> MonodromyData {
    MonodromyData::new(
        1,
        vec![BitMatrix::identity(2)],
        vec![f_eta()],
        vec![],
        None,
        mu,
    )
}

#[test]
fn section_example_is_solvable_for_every_mu() {
    let fin = f_eta().inverse().unwrap().add(&BitMatrix::identity(2));
    let fin_inv = fin.inverse().expect("1 + F_η⁻¹ is invertible");
    for mu in HomologyClass::all_nonzero(1) {
        let data = section_example(mu);
        let cert = k_vanishing_solver(&data).unwrap().expect("solvable");
        assert!(verify_certificate(&data, &cert).unwrap());
        let nu = vec_to_class(1, &fin_inv.mul_vec(&class_to_vec(mu)));
        assert_eq!(
            cert,
            KVanishingCertificate::NonSeparating {
                nu,
                lambdas: vec![]
            }
        );
    }
}

#[test]
fn trivial_separating_case() {
    for g in 1..=2 {
        for mu in HomologyClass::all_nonzero(g) {
            let data = MonodromyData::new(
                g,
                vec![BitMatrix::identity(2 * g)],
                vec![BitMatrix::identity(2 * g)],
                vec![],
                Some(Separation {
                    genus_plus: 1,
                    n_plus: 0,
                }),
                mu,
            );
            let cert = k_vanishing_solver(&data).unwrap().unwrap();
            let zero = HomologyClass::zero(g);
            assert_eq!(
                cert,
                KVanishingCertificate::Separating {
                    mu_plus: mu,
                    mu_minus: zero,
                    lambdas: vec![]
                }
            );
            assert!(verify_certificate(&data, &cert).unwrap());
        }
    }
}

#[test]
fn malformed_monodromy() {
    let mu = HomologyClass::beta(1, 1);
    let not_symplectic = MonodromyData::new(
        2,
        vec![BitMatrix::identity(4)],
        vec![{
            let mut a = BitMatrix::identity(4);
            a.set(0, 1, true);
            a
        }],
        vec![],
        None,
        HomologyClass::beta(2, 1),
    );
    assert!(matches!(
        k_vanishing_solver(&not_symplectic),
        Err(Error::MalformedMonodromy(_))
    ));
    let mut wrong_gamma = section_example(mu);
    wrong_gamma.vanishing.push(HomologyClass::alpha(1, 1));
    wrong_gamma.gamma.push(BitMatrix::identity(2));
    assert!(matches!(
        k_vanishing_solver(&wrong_gamma),
        Err(Error::MalformedMonodromy(_))
    ));
    let mut nontrivial = section_example(mu);
    nontrivial.xi[0] = m(&[&[1, 1], &[0, 1]]);
    assert!(matches!(
        k_vanishing_solver(&nontrivial),
        Err(Error::MalformedMonodromy(_))
    ));
    assert!(matches!(
        k_vanishing_solver(&section_example(HomologyClass::zero(1))),
        Err(Error::MalformedMonodromy(_))
    ));
}

/// Every genus-one configuration with one handle and `n` critical values.
fn genus_one_configurations(n: usize) -> Vec<MonodromyData> {
    let sl2: Vec<BitMatrix> = (0u32..16)
        .map(|b| {
            m(&[
                &[(b & 1) as u8, (b >> 1 & 1) as u8],
                &[(b >> 2 & 1) as u8, (b >> 3 & 1) as u8],
            ])
        })
        .filter(|a| a.inverse().is_some())
        .collect();
    let classes: Vec<HomologyClass> = HomologyClass::all_nonzero(1).collect();
    let mut out = Vec::new();
    let mut seps = vec![None];
    for gp in 0..=1 {
        for np in 0..=n {
            seps.push(Some(Separation {
                genus_plus: gp,
                n_plus: np,
            }));
        }
    }
    for x in &sl2 {
        for y in &sl2 {
            for code in 0..classes.len().pow(n as u32) {
                let deltas: Vec<HomologyClass> = (0..n)
                    .map(|k| classes[code / classes.len().pow(k as u32) % classes.len()])
                    .collect();
                for sep in &seps {
                    for &mu in &classes {
                        let data = MonodromyData::new(
                            1,
                            vec![x.clone()],
                            vec![y.clone()],
                            deltas.clone(),
                            *sep,
                            mu,
                        );
                        if data.validate().is_ok() {
                            out.push(data);
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn solver_agrees_with_brute_force() {
    let mut unsolvable = 0;
    let mut solvable = 0;
    for n in 0..=3 {
        for data in genus_one_configurations(n) {
            let answer = k_vanishing_solver(&data).unwrap();
            match &answer {
                Some(cert) => {
                    assert!(verify_certificate(&data, cert).unwrap());
                    solvable += 1;
                }
                None => {
                    assert!(!k_vanishing_brute_force(&data).unwrap());
                    unsolvable += 1;
                }
            }
        }
    }
    assert!(solvable > 0 && unsolvable > 0);
}

#[test]
fn odd_critical_counts_are_impossible_in_genus_one() {
    // transvections are odd in Sp(2, Z/2) = S3 while commutators are even
    assert!(genus_one_configurations(1).is_empty());
    assert!(genus_one_configurations(3).is_empty());
}

#[test]
fn invariant_preimage_obstruction() {
    // ν must be orthogonal to both δ_i = β, so (1 + F_η⁻¹)ν = (ν ∩ β)β = 0 never reaches μ
    let b = HomologyClass::beta(1, 1);
    let t_beta = m(&[&[1, 0], &[1, 1]]);
    let data = MonodromyData::new(
        1,
        vec![BitMatrix::identity(2)],
        vec![t_beta],
        vec![b, b],
        None,
        b,
    );
    assert_eq!(data.gamma[0], data.eta[0]);
    assert_eq!(k_vanishing_solver(&data).unwrap(), None);
    assert!(!k_vanishing_brute_force(&data).unwrap());
}

#[test]
fn certificates_are_rejected_when_tampered() {
    let data = section_example(HomologyClass::beta(1, 1));
    let Some(KVanishingCertificate::NonSeparating { nu, lambdas }) =
        k_vanishing_solver(&data).unwrap()
    else {
        panic!("expected a non-separating certificate");
    };
    let bad = KVanishingCertificate::NonSeparating {
        nu: nu + HomologyClass::alpha(1, 1),
        lambdas,
    };
    assert!(!verify_certificate(&data, &bad).unwrap());
}

#[test]
fn monodromy_json() {
    let text = r#"{"g": 1, "xi": [[[1,0],[0,1]]], "eta": [[[1,1],[1,0]]], "mu": "b:1"}"#;
    let data = MonodromyData::from_json(text).unwrap();
    assert_eq!(data, section_example(HomologyClass::beta(1, 1)));
}
