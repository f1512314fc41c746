mod common;

use common::{even_matrix, invertible, rng, standard};
use superreal_core::morphism::{adjoin_dual, dual_generator};
use superreal_core::{AlgebraSignature, Error, Shape, SuperMatrix, SuperNumber};

fn shapes() -> Vec<Shape> {
    vec![Shape::new(1, 1).unwrap(), Shape::new(2, 1).unwrap(), Shape::new(2, 2).unwrap()]
}

/// `Ber X = det P · det(S − R P⁻¹ Q)⁻¹`, the second Schur-complement form (valid for even `X`).
fn berezinian_other_form(x: &SuperMatrix) -> SuperNumber {
    let (m, n) = (x.shape().m(), x.shape().n());
    let sig = *x.signature();
    let block = |r0: usize, c0: usize, r: usize, c: usize| -> Vec<Vec<SuperNumber>> {
        (0..r).map(|i| (0..c).map(|j| x.get(r0 + i, c0 + j).clone()).collect()).collect()
    };
    let mul = |a: &Vec<Vec<SuperNumber>>, b: &Vec<Vec<SuperNumber>>| -> Vec<Vec<SuperNumber>> {
        let inner = b.len();
        let cols = if inner == 0 { 0 } else { b[0].len() };
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| (0..inner).fold(SuperNumber::zero(sig), |acc, k| &acc + &(&row[k] * &b[k][j])))
                    .collect()
            })
            .collect()
    };
    let p = block(0, 0, m, m);
    let q = block(0, m, m, n);
    let r = block(m, 0, n, m);
    let s = block(m, m, n, n);
    let as_matrix = |b: &Vec<Vec<SuperNumber>>, k: usize| {
        SuperMatrix::from_fn(Shape::new(k, 0).unwrap(), sig, |i, j| b[i][j].clone()).unwrap()
    };
    let p_inv = as_matrix(&p, m).invert().unwrap();
    let p_inv: Vec<Vec<SuperNumber>> = (0..m).map(|i| (0..m).map(|j| p_inv.get(i, j).clone()).collect()).collect();
    let rpq = mul(&mul(&r, &p_inv), &q);
    let schur: Vec<Vec<SuperNumber>> = (0..n).map(|i| (0..n).map(|j| &s[i][j] - &rpq[i][j]).collect()).collect();
    // both blocks now have even entries only, so the ordinary Berezinian of an m|0 matrix is det
    let det_p = as_matrix(&p, m).berezinian().unwrap();
    let det_schur = as_matrix(&schur, n).berezinian().unwrap();
    &det_p * &det_schur.invert().unwrap()
}

#[test]
fn berezinian_agrees_with_the_other_schur_complement() {
    for shape in shapes() {
        for i in 0..20 {
            let x = invertible(shape, standard(2), &mut rng("ber-schur", i));
            assert_eq!(x.berezinian().unwrap(), berezinian_other_form(&x), "{x}");
        }
    }
}

#[test]
fn berezinian_is_multiplicative() {
    for shape in shapes() {
        for i in 0..50 {
            let mut r = rng(&format!("ber-mult/{shape}"), i);
            let x = invertible(shape, standard(2), &mut r);
            let y = invertible(shape, standard(2), &mut r);
            let lhs = (&x * &y).berezinian().unwrap();
            assert_eq!(lhs, &x.berezinian().unwrap() * &y.berezinian().unwrap());
        }
    }
}

#[test]
fn berezinian_of_dual_perturbation_is_one_plus_supertrace() {
    let base = standard(1);
    let (ext, incl, _) = adjoin_dual(base).unwrap();
    let eps = SuperNumber::generator(ext, dual_generator(&ext).unwrap());
    for shape in shapes() {
        for i in 0..50 {
            let n = even_matrix(shape, base, &mut rng(&format!("ber-dual/{shape}"), i)).map_entries(&incl).unwrap();
            let x = &SuperMatrix::identity(shape, ext) + &n.left_scale(&eps).unwrap();
            let expected = &SuperNumber::one(ext) + &(&eps * &n.supertrace());
            assert_eq!(x.berezinian().unwrap(), expected);
        }
    }
}

#[test]
fn supertranspose_reverses_products_and_has_order_four() {
    for shape in shapes() {
        for i in 0..20 {
            let mut r = rng("st", i);
            let x = even_matrix(shape, standard(2), &mut r);
            let y = even_matrix(shape, standard(2), &mut r);
            assert_eq!((&x * &y).supertranspose(), &y.supertranspose() * &x.supertranspose());
            let st2 = x.supertranspose().supertranspose();
            assert_eq!(st2.supertranspose().supertranspose(), x);
            // st² negates the odd blocks
            assert_eq!(st2, x.delta_scale(&superreal_core::GaussianRational::from_integer(-1)).unwrap());
        }
    }
}

#[test]
fn supertrace_vanishes_on_commutators() {
    for shape in shapes() {
        for i in 0..20 {
            let mut r = rng("str", i);
            let x = even_matrix(shape, standard(2), &mut r);
            let y = even_matrix(shape, standard(2), &mut r);
            assert!(x.commutator(&y).unwrap().supertrace().is_zero());
        }
    }
}

#[test]
fn inverse_is_two_sided() {
    for shape in shapes() {
        for i in 0..20 {
            let x = invertible(shape, standard(2), &mut rng("inv", i));
            let inv = x.invert().unwrap();
            assert!((&x * &inv).is_identity());
            assert!((&inv * &x).is_identity());
        }
    }
}

#[test]
fn singular_body_is_rejected() {
    let sig = standard(1);
    let x = SuperMatrix::parse(sig, "shape 1|1 [[t1*t1~, t1],[t1~, (1)]]").unwrap();
    assert!(matches!(x.berezinian(), Err(Error::NotInvertible(_))));
    assert!(matches!(x.invert(), Err(Error::NotInvertible(_))));
}

#[test]
fn literal_format_round_trips_random_matrices() {
    let sig = AlgebraSignature::new(1, 1, 1, superreal_core::Conjugation::Standard).unwrap();
    for i in 0..20 {
        let x = even_matrix(Shape::new(2, 1).unwrap(), sig, &mut rng("literal", i));
        assert_eq!(SuperMatrix::parse(sig, &x.to_string()).unwrap(), x);
    }
}

#[test]
fn purely_even_berezinian_is_the_determinant() {
    let sig = standard(1);
    let x = SuperMatrix::parse(sig, "shape 2|0 [[(2), t1*t1~],[(3), (5)]]").unwrap();
    let expected = SuperNumber::parse(sig, "(10) + (-3)*t1*t1~").unwrap();
    assert_eq!(x.berezinian().unwrap(), expected);
    let y = SuperMatrix::parse(sig, "shape 0|2 [[(2), (0)],[(0), (4)]]").unwrap();
    assert_eq!(y.berezinian().unwrap(), SuperNumber::parse(sig, "(1/8)").unwrap());
}
