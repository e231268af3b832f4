//! End-to-end combinatorics on the affinized A1 datum: the worked examples
//! with length deficits 0, 2, and 4, their inversion-set intersections, and
//! the Bruhat chains between product-support elements.

use kmaha::{
    bruhat_ge_witness, build_datum, inv_intersect, inv_plus_plus, kma_is_positive, kma_normalize,
    kma_string, length_deficit, length_wt, reflection, wp_act, wp_from, wp_mul, wp_translation,
    BruhatVerdict, Coweight, KMAffineRoot, RootDatum, WPElt, WitnessBudget,
};
use kmaha::weyl::{real_roots_up_to, weyl_from_word, RealRoot};

fn datum() -> RootDatum {
    build_datum("A1aff").unwrap()
}

/// pi^mu * (word), mu in (Lambda0, alpha1^vee, delta) coordinates.
fn elt(d: &RootDatum, mu: [i64; 3], word: &[i64]) -> WPElt {
    wp_from(
        d,
        Coweight::new(mu.to_vec()),
        weyl_from_word(d, word).unwrap(),
    )
}

fn root(d: &RootDatum, coords: [i64; 2]) -> RealRoot {
    real_roots_up_to(d, coords[0].max(1))
        .into_iter()
        .find(|g| g.coords() == coords)
        .unwrap_or_else(|| panic!("no positive real root with coords {:?}", coords))
}

fn len(d: &RootDatum, x: &WPElt) -> i64 {
    let l = length_wt(d, x).unwrap();
    assert_eq!(l.n, 1, "A1aff lengths are integers");
    l.num
}

fn assert_yes_chain(d: &RootDatum, z: &WPElt, base: &WPElt, expect_steps: usize) {
    match bruhat_ge_witness(d, z, base, &WitnessBudget::default()).unwrap() {
        BruhatVerdict::Yes(chain) => {
            assert_eq!(chain.len(), expect_steps, "chain length");
            if let Some(last) = chain.last() {
                assert_eq!(&last.to, z, "chain must end at z");
            }
        }
        other => panic!("expected a witness chain, got {:?}", other),
    }
}

#[test]
fn deficit_zero_pair() {
    let d = datum();
    // x = pi^{Lambda0 + 4 delta}, y = s1 s0 pi^{Lambda0 + delta}.
    let x = elt(&d, [1, 0, 4], &[]);
    let y = wp_mul(
        &d,
        &elt(&d, [0, 0, 0], &[1, 0]),
        &wp_translation(&d, Coweight::new(vec![1, 0, 1])),
    );
    assert_eq!(len(&d, &x), 16);
    assert_eq!(len(&d, &y), 2);
    assert!(inv_intersect(&d, &x, &y).unwrap().is_empty());
    let deficit = length_deficit(&d, &x, &y).unwrap();
    assert_eq!(deficit.num, 0);
    assert_eq!(wp_mul(&d, &x, &y), elt(&d, [2, -1, 4], &[1, 0]));
}

#[test]
fn deficit_two_pair() {
    let d = datum();
    // x = s0 pi^{Lambda0} = pi^{Lambda0 - alpha0^vee} s0,
    // y = s0 s1 s0 pi^{Lambda0}.
    let pi_l0 = wp_translation(&d, Coweight::new(vec![1, 0, 0]));
    let x = wp_mul(&d, &elt(&d, [0, 0, 0], &[0]), &pi_l0);
    assert_eq!(x, elt(&d, [1, 1, -1], &[0]));
    let y = wp_mul(&d, &elt(&d, [0, 0, 0], &[0, 1, 0]), &pi_l0);

    let inter = inv_intersect(&d, &x, &y).unwrap();
    assert_eq!(inter.len(), 1);
    let beta = kma_normalize(&root(&d, [2, 1]), -1);
    assert_eq!(inter[0], beta);
    assert_eq!(kma_string(&d, &inter[0]), "(2a0+a1)[-1]");
    assert_eq!(length_deficit(&d, &x, &y).unwrap().num, 2);

    // Support elements of T_x T_y: xy and x s_beta y, one Bruhat step apart.
    let xy = wp_mul(&d, &x, &y);
    assert_eq!(xy, elt(&d, [2, 0, -2], &[1, 0]));
    let xsby = wp_mul(&d, &wp_mul(&d, &x, &reflection(&d, &beta)), &y);
    assert_eq!(xsby, elt(&d, [2, 1, -2], &[0]));
    assert_eq!(len(&d, &xsby) - len(&d, &xy), 1);
    assert_yes_chain(&d, &xsby, &xy, 1);
}

#[test]
fn deficit_four_pair_with_three_terms() {
    let d = datum();
    // x = pi^{Lambda0 + 2 alpha1^vee} s0 s1 = s0 s1 s0 pi^{Lambda0 + 4 delta} s0,
    // y = pi^{Lambda0 - alpha1^vee} s1 (s0 s1)^2 = s1 s0 pi^{Lambda0 + delta} s1 s0 s1.
    let x = elt(&d, [1, 2, 0], &[0, 1]);
    let x_alt = wp_mul(
        &d,
        &wp_mul(
            &d,
            &elt(&d, [0, 0, 0], &[0, 1, 0]),
            &wp_translation(&d, Coweight::new(vec![1, 0, 4])),
        ),
        &elt(&d, [0, 0, 0], &[0]),
    );
    assert_eq!(x, x_alt);
    let y = elt(&d, [1, -1, 0], &[1, 0, 1, 0, 1]);
    let y_alt = wp_mul(
        &d,
        &wp_mul(
            &d,
            &elt(&d, [0, 0, 0], &[1, 0]),
            &wp_translation(&d, Coweight::new(vec![1, 0, 1])),
        ),
        &elt(&d, [0, 0, 0], &[1, 0, 1]),
    );
    assert_eq!(y, y_alt);
    assert_eq!(len(&d, &x), 14);
    assert_eq!(len(&d, &y), 5);

    let inter = inv_intersect(&d, &x, &y).unwrap();
    let a1_m1 = kma_normalize(&root(&d, [0, 1]), -1);
    let a0 = kma_normalize(&root(&d, [1, 0]), 0);
    assert_eq!(inter, vec![a1_m1.clone(), a0.clone()]);
    assert_eq!(kma_string(&d, &inter[0]), "a1[-1]");
    assert_eq!(kma_string(&d, &inter[1]), "a0[0]");
    assert_eq!(length_deficit(&d, &x, &y).unwrap().num, 4);

    // The three T-basis support elements and their length gaps over xy.
    let xy = wp_mul(&d, &x, &y);
    assert_eq!(xy, elt(&d, [2, 2, 1], &[1, 0, 1]));
    let z2 = wp_mul(&d, &wp_mul(&d, &x, &reflection(&d, &a1_m1)), &y);
    assert_eq!(z2, elt(&d, [2, 3, -1], &[0, 1, 0, 1, 0, 1]));
    let z3 = wp_mul(&d, &wp_mul(&d, &x, &reflection(&d, &a0)), &y);
    assert_eq!(len(&d, &z2) - len(&d, &xy), 1);
    assert_eq!(len(&d, &z3) - len(&d, &xy), 3);
    assert_yes_chain(&d, &z2, &xy, 1);
}

#[test]
fn deficit_four_pair_with_four_terms() {
    let d = datum();
    // x = pi^{Lambda0 + 2 alpha1^vee} = pi^{s0 s1 s0 (Lambda0 + 4 delta)},
    // y = pi^{Lambda0 + alpha1^vee} s0 s1 = pi^{s0 (Lambda0 + delta)} s0 s1.
    let x = elt(&d, [1, 2, 0], &[]);
    assert_eq!(x, elt(&d, [1, 2, 0], &[]));
    let y = elt(&d, [1, 1, 0], &[0, 1]);
    assert_eq!(len(&d, &x), 16);
    assert_eq!(len(&d, &y), 4);

    let inter = inv_intersect(&d, &x, &y).unwrap();
    let b2 = kma_normalize(&root(&d, [2, 1]), 0); // -alpha1 + 2 delta
    let b3 = kma_normalize(&root(&d, [3, 2]), 0); // -alpha1 + 3 delta
    assert_eq!(inter, vec![b2.clone(), b3.clone()]);
    assert_eq!(kma_string(&d, &inter[0]), "(2a0+a1)[0]");
    assert_eq!(kma_string(&d, &inter[1]), "(3a0+2a1)[0]");
    assert_eq!(length_deficit(&d, &x, &y).unwrap().num, 4);

    let xy = wp_mul(&d, &x, &y);
    assert_eq!(xy, elt(&d, [2, 3, 0], &[0, 1]));
    assert_eq!(len(&d, &xy), 16);

    // Middle support terms: one Bruhat step above xy each.
    for b in [&b2, &b3] {
        let z = wp_mul(&d, &wp_mul(&d, &x, &reflection(&d, b)), &y);
        assert_eq!(len(&d, &z) - len(&d, &xy), 1);
        assert_yes_chain(&d, &z, &xy, 1);
    }

    // Fourth support element (s0 s1)^2 pi^{2 Lambda0 + 5 delta} = xy s_{a0[-1]} s1:
    // two raising steps above xy.
    let a0_m1 = kma_normalize(&root(&d, [1, 0]), -1);
    let z4 = wp_mul(
        &d,
        &wp_mul(&d, &xy, &reflection(&d, &a0_m1)),
        &elt(&d, [0, 0, 0], &[1]),
    );
    assert_eq!(z4, elt(&d, [2, 4, -3], &[0, 1, 0, 1]));
    assert_eq!(len(&d, &z4) - len(&d, &xy), 2);
    // xy(a0[-1]) = alpha1 - 3 delta + pi > 0, so s_{a0[-1]} raises xy and
    // a0[-1] lies in its own raise set.
    let img = wp_act(&d, &xy, &a0_m1);
    assert!(kma_is_positive(&img));
    assert_eq!(img, KMAffineRoot { beta: root(&d, [3, 2]).neg(), n: 1 });
    assert!(inv_plus_plus(&d, &xy, &a0_m1).unwrap().contains(&a0_m1));

    match bruhat_ge_witness(&d, &z4, &xy, &WitnessBudget::default()).unwrap() {
        BruhatVerdict::Yes(chain) => {
            assert!(!chain.is_empty() && chain.len() <= 2);
            assert_eq!(&chain.last().unwrap().to, &z4);
        }
        other => panic!("expected a witness chain for the fourth term, got {:?}", other),
    }
}

#[test]
fn inv_plus_plus_counts_match_length_steps() {
    let d = datum();
    // Raise sets along an actual chain: cardinality equals the length jump,
    // checked internally; here we also confirm the jump values.
    let u = elt(&d, [1, 1, 0], &[0, 1]);
    let lu = len(&d, &u);
    for gamma in real_roots_up_to(&d, 2) {
        for m in [-2i64, -1, 0, 1, 2] {
            let b = kma_normalize(&gamma, m);
            match inv_plus_plus(&d, &u, &b) {
                Ok(raise) => {
                    let usb = wp_mul(&d, &u, &reflection(&d, &b));
                    assert_eq!(
                        raise.len() as i64,
                        len(&d, &usb) - lu,
                        "raise-set size at {}",
                        kma_string(&d, &b)
                    );
                    assert!(raise.contains(&b));
                }
                Err(_) => {} // not a raise from u, or leaves the Tits cone
            }
        }
    }
}
