use carrousel_core::algebra::factor::{factor_over, ipoly};
use carrousel_core::algebra::upoly;
use carrousel_core::algebra::{roots, scalar};
use proptest::prelude::*;

fn product(fs: &[upoly::UPoly]) -> upoly::UPoly {
    fs.iter().fold(ipoly(&[1]), |acc, f| upoly::mul(&acc, f))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // factors of a product of random integer polynomials multiply back to
    // the squarefree input and are never fewer than the distinct input factors
    #[test]
    fn factorization_reassembles(
        parts in prop::collection::vec(prop::collection::vec(-9i64..=9, 2..5), 1..4)
    ) {
        let parts: Vec<upoly::UPoly> = parts
            .iter()
            .map(|c| ipoly(c))
            .filter(|p| p.len() >= 2)
            .collect();
        prop_assume!(!parts.is_empty());
        let f = upoly::squarefree_part(&product(&parts));
        prop_assume!(f.len() >= 2);
        let fs = factor_over(None, &f).unwrap();
        prop_assert_eq!(product(&fs), upoly::monic(&f));
        for g in &fs {
            prop_assert!(g.len() >= 2);
        }
    }
}

#[test]
fn wilkinson_like_product_splits_completely() {
    let mut p = ipoly(&[1]);
    for r in -6..=6 {
        p = upoly::mul(&p, &ipoly(&[r, 3]));
    }
    assert_eq!(factor_over(None, &p).unwrap().len(), 13);
}

#[test]
fn swinnerton_dyer_is_irreducible() {
    // minimal polynomial of √2 + √3 + √5
    let p = ipoly(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
    assert_eq!(factor_over(None, &p).unwrap().len(), 1);
}

#[test]
fn roots_of_unity_in_a_fresh_tower() {
    let rs = scalar::with_fresh_tower(|| roots(&ipoly(&[-1, 0, 0, 0, 0, 0, 1]))).unwrap();
    assert_eq!(rs.len(), 6);
    assert!(rs.iter().all(|(_, m)| *m == 1));
}
