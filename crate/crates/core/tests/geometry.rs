use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use waring_core::algebra::{ExactMatrix, Field, HomogeneousPoly, Scalar, DEFAULT_PRIMES};
use waring_core::interpolation::*;
use waring_core::numerology::SpecializedSpec;
use waring_core::probes::*;

fn fp() -> Field {
    Field::Prime(DEFAULT_PRIMES[0])
}

fn member(d: u32, n: u32, l: u32, seed: u64) -> (HomogeneousPoly, PointConfig) {
    let s = SpecializedSpec::of(d, n, l, 0).unwrap();
    let c = sample_config(s, fp(), seed).unwrap();
    (random_member(s, &c, seed + 1).unwrap(), c)
}

fn all_points(c: &PointConfig) -> Vec<Vec<Scalar>> {
    c.points().cloned().collect()
}

#[test]
fn quartic_surfaces_with_seven_nodes() {
    for seed in 0..3 {
        let (f, c) = member(4, 3, 7, seed);
        let r = singularity_report(&f, &all_points(&c), 4, seed).unwrap();
        assert!(r.all_nodes(3), "{:?}", r.points);
        assert_eq!(r.finiteness, Finiteness::Finite);
    }
}

#[test]
fn eight_double_points_give_a_singular_curve() {
    for seed in 0..3 {
        let (f, c) = member(4, 3, 8, seed);
        let r = singularity_report(&f, &all_points(&c), 4, seed).unwrap();
        assert_eq!(r.finiteness, Finiteness::Infinite);
    }
}

#[test]
fn double_cubic_and_double_conic() {
    let (f, c) = member(6, 2, 9, 3);
    let (_, g) = square_detect(&f).expect("a square");
    assert_eq!(g.degree(), 3);
    assert!(c.points().all(|p| g.eval(p).is_zero()));
    let r = plane_sing_finite(&f, 1).unwrap();
    assert_eq!(r.fixed_part.unwrap(), g.normalized());

    let (f, c) = member(4, 2, 5, 4);
    let (_, g) = square_detect(&f).expect("a square");
    assert_eq!(g.degree(), 2);
    assert!(c.points().all(|p| g.eval(p).is_zero()));
}

/// `M^{-1} p`, read off the kernel of `[M | -p]`.
fn pull_back(m: &ExactMatrix, p: &[Scalar]) -> Vec<Scalar> {
    let rows = (0..m.rows())
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(-&p[i]);
            r
        })
        .collect();
    let k = ExactMatrix::from_rows(m.field(), rows).unwrap().kernel();
    assert_eq!(k.len(), 1);
    let v = &k[0];
    let last = v[v.len() - 1].inv().unwrap();
    v[..v.len() - 1].iter().map(|x| x * &last).collect()
}

#[test]
fn chart_and_coordinate_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for seed in 0..3 {
        let (f, c) = member(4, 3, 7, 12 + seed);
        let m = loop {
            let rows = (0..4)
                .map(|_| (0..4).map(|_| fp().random(&mut rng, 0)).collect())
                .collect();
            let m = ExactMatrix::from_rows(fp(), rows).unwrap();
            if m.rank() == 4 {
                break m;
            }
        };
        let moved = f.substitute(&m).unwrap();
        for p in c.points() {
            let a = node_check_in_chart(&f, p, 0).unwrap();
            let b = node_check_in_chart(&f, p, 1).unwrap();
            assert_eq!(a, b);
            assert_eq!(node_check(&moved, &pull_back(&m, p)).unwrap(), a);
        }
    }
}

fn basis_forms(d: u32, n: u32, l: u32, seed: u64) -> (Vec<HomogeneousPoly>, PointConfig) {
    let s = SpecializedSpec::of(d, n, l, 0).unwrap();
    let c = sample_config(s, fp(), seed).unwrap();
    let k = conditions_matrix(s, &c).unwrap().matrix.kernel();
    let forms = k
        .into_iter()
        .map(|v| HomogeneousPoly::from_coeffs(fp(), n as usize, d, v).unwrap())
        .collect();
    (forms, c)
}

#[test]
fn quintic_map_is_birational() {
    let (forms, c) = basis_forms(5, 2, 6, 1);
    assert_eq!(forms.len(), 3);
    for seed in 0..5 {
        let r = map_rank_and_degree(&forms, &all_points(&c), seed).unwrap();
        assert_eq!(r.verdict, MapVerdict::Birational, "{r:?}");
        assert_eq!(r.fiber_count, Some(1));
    }
    let (forms, c) = basis_forms(4, 2, 4, 2);
    let r = map_rank_and_degree(&forms, &all_points(&c), 0).unwrap();
    assert_eq!(r.verdict, MapVerdict::ComposedWithPencil);
}
