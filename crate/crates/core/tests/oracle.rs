//! Regularity bounds frozen from an independent implementation (exact
//! rational factorization, floating eigenvalues and norms in numpy).

use subdiv::analysis::{
    holder_regularity_with, smoothing_factorization, transfer_matrices, HolderOptions, UpperNorm,
};
use subdiv::numeric::{rat, LaurentPolynomial, SmallMatrix};
use subdiv::scheme::Catalog;

/// `(scheme, p, [lower, mid, upper] with the 2-norm, [lower, mid, upper] with the infinity norm)`.
const FROZEN: [(&str, usize, [f64; 3], [f64; 3]); 14] = [
    ("binary-chaikin-2pt", 3, [2.0, 2.0, 2.0], [2.0, 2.0, 2.0]),
    ("quat-chaikin-derived", 3, [2.0, 2.0, 2.0], [2.0, 2.0, 2.0]),
    (
        "binary-siddiqi-4pt",
        5,
        [4.124038959239782, 4.124784727808029, 4.125530882083859],
        [4.125530882083859, 4.125530882083859, 4.125530882083859],
    ),
    (
        "quat-5pt",
        5,
        [4.122419936996614, 4.1239737324755135, 4.125530882083859],
        [4.125530882083859, 4.125530882083859, 4.125530882083859],
    ),
    (
        "binary-siddiqi-6pt",
        7,
        [6.35922734857556, 6.383726924495083, 6.408649745420325],
        [6.407044708525313, 6.407847003767011, 6.408649745420325],
    ),
    (
        "quat-8pt",
        7,
        [6.350157598984371, 6.378810963039281, 6.408649745420325],
        [6.4077165850578135, 6.408183014342972, 6.408649745420325],
    ),
    (
        "binary-siddiqi-8pt",
        9,
        [8.487772721639164, 8.575093171258969, 8.668041215456858],
        [8.649727279418675, 8.658855187415401, 8.668041215456858],
    ),
    (
        "quat-11pt",
        9,
        [8.468949857877904, 8.56164859492462, 8.668041215456858],
        [8.656346502257605, 8.662170159320056, 8.668041215456858],
    ),
    (
        "binary-binomial-10pt",
        11,
        [3.2572206809733366, 3.768111659425724, 4.566302003418756],
        [3.633472872034517, 4.025770813301876, 4.566302003418756],
    ),
    (
        "quat-14pt-binomial",
        11,
        [4.369278646375917, 4.5717452531561715, 4.854227146475774],
        [4.589101302946663, 4.709551548283028, 4.854227146475774],
    ),
    (
        "binary-siddiqi-10pt",
        11,
        [10.528445462064344, 10.679069873386453, 10.847273372859684],
        [10.811950666805288, 10.829503918123123, 10.847273372859684],
    ),
    (
        "quat-14pt",
        11,
        [10.503074081961385, 10.654835750859197, 10.847273372859688],
        [10.823617353868679, 10.835348395165088, 10.847273372859688],
    ),
    (
        "binary-siddiqi-12pt",
        13,
        [12.53546641808765, 12.723710631971775, 12.940256039735214],
        [12.905480200929311, 12.922763339899381, 12.940256039735214],
    ),
    (
        "quat-17pt",
        13,
        [12.509699729081742, 12.693320022703077, 12.940256039735214],
        [12.916946133858135, 12.928506935216218, 12.940256039735214],
    ),
];

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-8
}

#[test]
fn bounds_match_frozen_values() {
    for (name, p, two, inf) in FROZEN {
        let s = Catalog::builtin().get(name).unwrap();
        for (norm, expect) in [(UpperNorm::Spectral, two), (UpperNorm::Infinity, inf)] {
            let r = holder_regularity_with(&s, HolderOptions::with_norm(norm)).unwrap();
            assert_eq!(r.smoothing_order, p, "{name}");
            let got = [r.r_lower, r.r_mid, r.r_upper];
            assert!(
                got.iter().zip(&expect).all(|(a, b)| close(*a, *b)),
                "{name} ({}): {got:?} vs {expect:?}",
                norm.label()
            );
        }
    }
}

#[test]
fn four_point_transfer_matrices() {
    let four = Catalog::builtin().get("binary-siddiqi-4pt").unwrap();
    let (p, nu) = smoothing_factorization(&four.mask.symbol(), 2);
    assert_eq!(p, 5);
    assert_eq!(
        nu.normalized(),
        LaurentPolynomial::new(0, vec![rat(1, 12), rat(11, 6), rat(1, 12)])
    );
    let m = transfer_matrices(&nu, 2);
    let z = rat(0, 1);
    let expect = [
        [[rat(11, 6), z.clone()], [rat(1, 12), rat(1, 12)]],
        [[rat(1, 12), rat(1, 12)], [z.clone(), rat(11, 6)]],
        [[z.clone(), rat(11, 6)], [z.clone(), rat(1, 12)]],
    ];
    assert_eq!(m.len(), 3);
    for (got, e) in m.iter().zip(expect) {
        assert_eq!(
            got,
            &SmallMatrix::from_rows(e.iter().map(|r| r.to_vec()).collect())
        );
    }
    assert_eq!(m[0].infinity_norm(), rat(11, 6));
}

#[test]
fn five_point_quaternary_matrix_pattern() {
    let five = Catalog::builtin().get("quat-5pt").unwrap();
    let (p, nu) = smoothing_factorization(&five.mask.symbol(), 4);
    assert_eq!(p, 5);
    let m = transfer_matrices(&nu, 4);
    assert_eq!(m.len(), 7);
    assert!(m.iter().all(|e| e.size() == 6));
    // (E_q)_{ij} = e_{6+i-4j+q}: E_0 starts with e_3, E_4's first column is out of range.
    assert_eq!(m[0].get(1, 1), &rat(121, 36));
    assert!((1..=6).all(|i| m[4].get(i, 1).is_zero()));
}
