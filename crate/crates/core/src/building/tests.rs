use super::*;
use crate::exact::{int, rat};
use crate::Exec;

fn ctx(p: u64, n: usize) -> PrimeContext {
    PrimeContext::new(p, n, 12).unwrap()
}

fn diag(exps: &[u32], c: &PrimeContext) -> LatticeClass {
    LatticeClass::diagonal(exps, c).unwrap()
}

#[test]
fn context_validation() {
    assert_eq!(PrimeContext::new(4, 2, 5), Err(Error::NotPrime(4)));
    assert_eq!(PrimeContext::new(2, 4, 5), Err(Error::UnsupportedDimension(4)));
    assert!(PrimeContext::new(2, 2, 70).is_err());
    assert!(PrimeContext::new(3, 3, 20).is_ok());
}

#[test]
fn standard_chamber_n2() {
    let c = ctx(2, 2);
    let c0 = standard_chamber(&c);
    assert_eq!(c0.vertices(), &[diag(&[0, 0], &c), diag(&[0, 1], &c)]);
}

#[test]
fn standard_chamber_n3() {
    let c = ctx(2, 3);
    let c0 = standard_chamber(&c);
    assert_eq!(c0.vertex(0).hnf(), &[1, 0, 0, 0, 1, 0, 0, 0, 1]);
    assert_eq!(c0.vertex(1).hnf(), &[1, 0, 0, 0, 1, 0, 0, 0, 2]);
    assert_eq!(c0.vertex(2).hnf(), &[1, 0, 0, 0, 2, 0, 0, 0, 2]);
    assert!(FlagChamber::from_vertices(c0.vertices().to_vec(), &c).is_ok());
}

#[test]
fn rejects_non_flags() {
    let c = ctx(2, 2);
    // distance two apart in the tree
    let far = vec![diag(&[0, 0], &c), diag(&[0, 2], &c)];
    assert!(FlagChamber::from_vertices(far, &c).is_err());
    let c3 = ctx(2, 3);
    let bad = vec![diag(&[0, 0, 0], &c3), diag(&[1, 0, 0], &c3), diag(&[0, 1, 1], &c3)];
    assert!(matches!(FlagChamber::from_vertices(bad, &c3), Err(Error::InvalidChamber(_))));
}

#[test]
fn valency_of_tree_vertices() {
    for (p, expected) in [(2, 3), (3, 4), (5, 6)] {
        let c = ctx(p, 2);
        let face = Face::from_vertices(vec![LatticeClass::standard(&c)], &c).unwrap();
        let through = chambers_containing(&face, &c).unwrap();
        assert_eq!(through.len(), expected);
        for ch in &through {
            assert_eq!(ch.vertex(0), &LatticeClass::standard(&c));
        }
    }
}

#[test]
fn faces_of_gl3_standard_chamber() {
    let c = ctx(2, 3);
    let c0 = standard_chamber(&c);
    for l in 0..3 {
        let through = chambers_containing(&c0.face(l), &c).unwrap();
        assert_eq!(through.len(), 3);
        assert!(through.contains(&c0));
    }
    let c = ctx(3, 3);
    let c0 = standard_chamber(&c);
    assert_eq!(chambers_containing(&c0.face(1), &c).unwrap().len(), 4);
}

#[test]
fn invalid_faces() {
    let c = ctx(2, 3);
    let bad = vec![diag(&[0, 0, 0], &c), diag(&[0, 2, 2], &c)];
    assert!(Face::from_vertices(bad, &c).is_err());
    let repeated = vec![diag(&[0, 0, 0], &c), diag(&[1, 1, 1], &c)];
    assert!(Face::from_vertices(repeated, &c).is_err());
}

#[test]
fn small_ball_shells() {
    let c = PrimeContext::for_radius(2, 2, 3).unwrap();
    let c0 = standard_chamber(&c);
    assert_eq!(BallGraph::build(&c0, 1, &c).unwrap().shell_counts(), vec![1, 4]);
    assert_eq!(BallGraph::build(&c0, 3, &c).unwrap().shell_counts(), vec![1, 4, 8, 16]);
    let c3 = PrimeContext::for_radius(2, 3, 2).unwrap();
    let b = BallGraph::build(&standard_chamber(&c3), 2, &c3).unwrap();
    assert_eq!(b.shell_counts(), vec![1, 6, 24]);
}

#[test]
fn ball_needs_precision() {
    let c = PrimeContext::new(2, 2, 4).unwrap();
    assert_eq!(
        BallGraph::build(&standard_chamber(&c), 5, &c).err(),
        Some(Error::Precision(4))
    );
}

#[test]
fn ball_structure() {
    for (p, n, r) in [(2, 2, 4), (3, 2, 3), (2, 3, 2)] {
        let c = PrimeContext::for_radius(p, n, r).unwrap();
        let b = BallGraph::build(&standard_chamber(&c), r, &c).unwrap();
        assert_eq!(b.distance(0), 0);
        assert_eq!(b.base(), &standard_chamber(&c));
        for i in 0..b.len() {
            for &(s, j) in b.neighbors(i) {
                assert!(b.distance(i).abs_diff(b.distance(j)) <= 1);
                let shared = b.chamber(i).vertices().iter().zip(b.chamber(j).vertices()).filter(|(x, y)| x == y).count();
                assert_eq!(shared, n - 1);
                assert_eq!(b.face_of(i, s), b.face_of(j, s));
            }
        }
        for f in b.interior_faces() {
            assert_eq!(f.chambers.len(), p as usize + 1);
        }
    }
}

#[test]
fn sequential_and_parallel_balls_agree() {
    let c = PrimeContext::for_radius(3, 2, 4).unwrap();
    let c0 = standard_chamber(&c);
    let a = BallGraph::build_with(&c0, 4, &c, Exec::Sequential).unwrap();
    let b = BallGraph::build_with(&c0, 4, &c, Exec::Parallel).unwrap();
    assert_eq!(a.chambers(), b.chambers());
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn labels_on_standard_chamber() {
    for n in [2, 3] {
        let c = ctx(3, n);
        for (i, v) in standard_chamber(&c).vertices().iter().enumerate() {
            assert_eq!(vertex_label(v, &c), i);
        }
    }
}

#[test]
fn labels_are_a_full_residue_set() {
    let c = PrimeContext::for_radius(2, 3, 2).unwrap();
    let b = BallGraph::build(&standard_chamber(&c), 2, &c).unwrap();
    for ch in b.chambers() {
        let mut labels: Vec<usize> = ch.vertices().iter().map(|v| vertex_label(v, &c)).collect();
        labels.sort();
        assert_eq!(labels, vec![0, 1, 2]);
    }
}

#[test]
fn identity_and_scalars_act_trivially() {
    let c = ctx(2, 3);
    let c0 = standard_chamber(&c);
    assert_eq!(act_on_chamber(&GlMatrix::identity(3), &c0, &c).unwrap(), c0);
    assert_eq!(act_on_chamber(&GlMatrix::scalar(3, int(2)), &c0, &c).unwrap(), c0);
    assert_eq!(act_on_chamber(&GlMatrix::scalar(3, rat(1, 8)), &c0, &c).unwrap(), c0);
}

#[test]
fn pi_rotates_the_standard_chamber() {
    for n in [2, 3] {
        let c = ctx(2, n);
        let c0 = standard_chamber(&c);
        let pi = GlMatrix::pi(n, 2);
        assert_eq!(act_on_chamber(&pi, &c0, &c).unwrap(), c0);
        for i in 0..n {
            assert_eq!(&act_on_class(&pi, c0.vertex(i), &c).unwrap(), c0.vertex((i + 1) % n));
        }
    }
}

#[test]
fn singular_matrices_are_rejected() {
    let c = ctx(2, 2);
    let g = GlMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
    assert_eq!(act_on_class(&g, &LatticeClass::standard(&c), &c), Err(Error::Singular));
}

#[test]
fn epsilon_examples() {
    let c2 = ctx(2, 2);
    let id = epsilon(&GlMatrix::identity(2), &c2).unwrap();
    assert_eq!((id.from_labels, id.from_determinant), (1, 1));
    let pi = epsilon(&GlMatrix::pi(2, 2), &c2).unwrap();
    assert_eq!((pi.from_labels, pi.from_determinant), (-1, -1));
    let c3 = ctx(2, 3);
    let d = GlMatrix::diagonal(&[int(2), int(1), int(1)]);
    let e = epsilon(&d, &c3).unwrap();
    assert_eq!((e.from_labels, e.from_determinant), (1, 1));
    let pi3 = epsilon(&GlMatrix::pi(3, 2), &c3).unwrap();
    assert_eq!((pi3.from_labels, pi3.from_determinant), (1, 1));
}

#[test]
fn generator_matrices_fix_all_but_one_vertex() {
    for n in [2, 3] {
        let c = ctx(3, n);
        let c0 = standard_chamber(&c);
        for s in 0..n {
            let g = affine_generator_matrix(s, &c).unwrap();
            let image = act_on_chamber(&g, &c0, &c).unwrap();
            assert_ne!(image, c0);
            let moved = label_of_face_type(n, s);
            for l in 0..n {
                assert_eq!(image.vertex(l) == c0.vertex(l), l != moved, "n={n} s={s} l={l}");
            }
            assert_eq!(image.face_of_type(s), c0.face_of_type(s));
        }
    }
    assert!(affine_generator_matrix(3, &ctx(2, 3)).is_err());
}

#[test]
fn weyl_words_reach_chambers() {
    let c = ctx(2, 2);
    assert_eq!(weyl_to_chamber(&[], &c).unwrap(), standard_chamber(&c));
    // s1 s1 = 1
    assert_eq!(weyl_to_chamber(&[1, 1], &c).unwrap(), standard_chamber(&c));
}

#[test]
fn tree_helpers() {
    let c = ctx(3, 2);
    let o = LatticeClass::standard(&c);
    let nbrs = tree_neighbors(&o, &c).unwrap();
    assert_eq!(nbrs.len(), 4);
    for v in &nbrs {
        assert!(tree_adjacent(&o, v, &c).unwrap());
        assert!(tree_neighbors(v, &c).unwrap().contains(&o));
    }
    assert!(!tree_adjacent(&o, &o, &c).unwrap());
    assert!(!tree_adjacent(&o, &diag(&[0, 2], &c), &c).unwrap());
}

#[test]
fn iwahori_membership() {
    let c = ctx(2, 2);
    assert!(in_standard_iwahori(&GlMatrix::from_int_rows(&[vec![1, 5], vec![2, 3]]).unwrap(), &c));
    assert!(!in_standard_iwahori(&GlMatrix::from_int_rows(&[vec![1, 0], vec![1, 1]]).unwrap(), &c));
    assert!(!in_standard_iwahori(&GlMatrix::pi(2, 2), &c));
}
