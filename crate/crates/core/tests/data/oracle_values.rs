// Generated by tools/oracles.py (mpmath, 50 digits). Do not edit.

pub const PRABHAKAR: &[(f64, f64, f64, f64, f64)] = &[
    (0.5, 1.0, 1.0, -1.0, 0.427583576155807),
    (0.5, 1.0, 1.0, -3.0, 0.17900115118138996),
    (0.7, 1.2, 1.0, 2.0, 17.055272198988213),
    (0.9, 1.0, 2.0, -4.0, -0.038139328431282045),
    (0.4, 0.4, 1.5, -2.0, -0.007067160020015308),
    (0.3, 1.0, 0.5, 1.5, 28.3951035810037),
    (0.8, 1.8, 3.0, -0.5, 0.3989510894420116),
    (1.5, 1.0, 1.0, -6.0, -0.2860686816843084),
];

pub const E_ERFC_1: f64 = 0.427583576155807;

pub const INCOMPLETE_BETA: &[(f64, f64, f64, f64)] = &[
    (0.3, 0.7, 0.5, 2.825321941882868),
    (2.5, 0.5, 0.9, 0.5767843292986908),
    (1.4, 1.0, 0.25, 0.10256235312473529),
    (0.6, 0.58, 0.999, 2.44639077412281),
    (0.5, 2.0, 1.0, 1.3333333333333333),
];

pub const LOWER_GAMMA: &[(f64, f64, f64)] = &[
    (0.5, 0.3, 2.4345741566779844),
    (2.0, 1.7, 0.61949962115136),
    (10.0, 2.5, 1.3276790708673576),
    (30.0, 0.8, 1.1642297137252562),
];

pub const KUMMER: &[(f64, f64, f64, f64)] = &[
    (0.5, 1.5, -2.0, 0.5981440066613041),
    (1.2, 3.1, 4.0, 7.615001382241384),
    (0.3, 1.3, -20.0, 0.36535182276820144),
];

pub const MOMENT_TEMPERED: &[(f64, f64, f64)] = &[
    (0.6, 0.1, 0.596492487255224),
    (0.6, 1.0, 1.6638080359958698),
    (0.6, 10.0, 6.089193069524896),
    (1.0, 0.1, 0.46860171826039),
    (1.0, 1.0, 2.4716049381348695),
    (1.0, 10.0, 20.499999684837036),
    (1.4, 0.1, 0.38869591182496943),
    (1.4, 1.0, 3.793055944305818),
    (1.4, 10.0, 69.51040431172305),
    (2.0, 0.1, 0.317042907931045),
    (2.0, 1.0, 7.572114021454894),
    (2.0, 10.0, 439.50000112579414),
];

pub const MOMENT_MIXTURE: &[(f64, f64, f64)] = &[
    (0.6, 0.1, 0.47738953178306576),
    (0.6, 1.0, 1.0091113040376531),
    (0.6, 10.0, 1.8706122382535448),
    (1.0, 0.1, 0.32413287098256954),
    (1.0, 1.0, 1.1498232198857308),
    (1.0, 10.0, 3.2760285238122693),
    (1.4, 0.1, 0.2320978871389187),
    (1.4, 1.0, 1.3959033522300135),
    (1.4, 10.0, 6.1802147742108735),
    (2.0, 0.1, 0.1511625428591723),
    (2.0, 1.0, 2.035745423441517),
    (2.0, 10.0, 17.745644223782897),
];

pub const STABLE_COV_Z: &[(f64, f64, f64, f64, f64)] = &[
    (0.3, 0.3, 2.0, 1.0, 0.9128082547677836),
    (0.6, 0.8, 5.0, 0.5, 1.4172763608531567),
    (0.9, 0.5, 1.0, 1.0, 1.0397541343476364),
    (0.5, 0.7, 0.2, 3.0, 0.6448621988083303),
];

