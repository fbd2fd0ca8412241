//! Small built-in graph products used by tests, examples and the Python
//! bindings.

use rand::Rng;

use crate::spec::GraphProductSpec;
use crate::word::{GWord, Letter};

/// Right-angled Artin group on three nodes; `alpha` and `beta` commute,
/// `gamma` commutes with neither.
pub const FIG2: &str = "\
node alpha z
node beta z
node gamma z
edge alpha beta
gen a alpha 1
gen a- alpha -1
gen b beta 1
gen b- beta -1
gen c gamma 1
gen c- gamma -1
order a a- b b- c c-
";

/// Right-angled Coxeter group on the same graph.
pub const RACG: &str = "\
node alpha cyclic 2
node beta cyclic 2
node gamma cyclic 2
edge alpha beta
gen a alpha 1
gen b beta 1
gen c gamma 1
order a b c
";

/// Free product Z/2 * Z/3.
pub const FREE_C2_C3: &str = "\
node p cyclic 2
node q cyclic 3
gen x p 1
gen y q 1
gen y- q 2
order x y y-
";

/// Direct product Z/2 x Z/2.
pub const DIRECT_C2_C2: &str = "\
node p cyclic 2
node q cyclic 2
edge p q
gen x p 1
gen y q 1
order x y
";

/// Symmetric group S3 as a Cayley table: 0 = e, 1 = (12), 2 = (13),
/// 3 = (23), 4 = (123), 5 = (132).
pub const S3_TABLE: &str = "0 1 2 3 4 5 1 0 5 4 3 2 2 4 0 5 1 3 3 5 4 0 2 1 4 2 3 1 5 0 5 3 1 2 0 4";

/// One node of every kind: S3 commuting with Z, and a free group of rank 2
/// that commutes with nothing.
pub fn mixed_text() -> String {
    format!(
        "\
node s finite 6
table s {S3_TABLE}
node z z
node f free 2
edge s z
gen s1 s 1
gen s3 s 3
gen t z 1
gen t- z -1
gen x f 1
gen x- f -1
gen y f 2
gen y- f -2
order s1 s3 t t- x x- y y-
"
    )
}

fn load(text: &str) -> GraphProductSpec {
    GraphProductSpec::parse(text).expect("built-in spec is valid")
}

pub fn fig2() -> GraphProductSpec {
    load(FIG2)
}

pub fn racg() -> GraphProductSpec {
    load(RACG)
}

pub fn free_c2_c3() -> GraphProductSpec {
    load(FREE_C2_C3)
}

pub fn direct_c2_c2() -> GraphProductSpec {
    load(DIRECT_C2_C2)
}

pub fn mixed() -> GraphProductSpec {
    load(&mixed_text())
}

/// The four corpus specs, with names.
pub fn all() -> Vec<(&'static str, GraphProductSpec)> {
    vec![
        ("fig2", fig2()),
        ("racg", racg()),
        ("free_c2_c3", free_c2_c3()),
        ("direct_c2_c2", direct_c2_c2()),
    ]
}

/// A generator word of exactly `len` letters, chosen uniformly.
pub fn random_word_of_len<R: Rng>(spec: &GraphProductSpec, rng: &mut R, len: usize) -> GWord {
    let sigma = spec.sigma();
    GWord(
        (0..len)
            .map(|_| {
                let g = &sigma[rng.gen_range(0..sigma.len())];
                Letter {
                    node: g.node,
                    element: spec.sigma_element(g).clone(),
                }
            })
            .collect(),
    )
}

/// A generator word of length uniform in `0..=max_len`.
pub fn random_word<R: Rng>(spec: &GraphProductSpec, rng: &mut R, max_len: usize) -> GWord {
    let len = rng.gen_range(0..=max_len);
    random_word_of_len(spec, rng, len)
}
