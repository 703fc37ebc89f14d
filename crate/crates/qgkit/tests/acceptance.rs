//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qgkit::parse::parse_expression;
use qgkit_core::braided::{
    binomial_operators, braid, hecke_residual, r_matrix, relations_from_omega, solve_omega, yang_baxter_residual,
    FROZEN_COMPOSE_SIDE,
};
use qgkit_core::envelope::{check_dependency, check_preset_bialgebra, verify_dj_image, FROZEN_EF};
use qgkit_core::freealg::same_span;
use qgkit_core::linalg::in_span;
use qgkit_core::oscillator::{
    check_coassociativity, check_comodule, covariance_constraints, derive_bialgebra, standard_counit,
    verify_sl2_substitution, CoactionMap, OscillatorPresentation,
};
use qgkit_core::{
    Exponent, GenId, GeneratorTable, Matrix, NcPoly, OmegaTensor, Report, RewriteSystem, RootOrder, Scalar,
    TensorOperator, Word,
};

type Outcome = Result<String, String>;

fn m6() -> RootOrder {
    RootOrder::DEFAULT
}

fn nu(n: i64, d: i64) -> Exponent {
    Exponent::new(n, d).unwrap()
}

fn s(text: &str) -> Scalar {
    qgkit::parse_scalar(text, m6()).unwrap()
}

fn all_pass(r: &Report) -> Outcome {
    match r.entries.iter().find(|e| !e.status.is_pass()) {
        None => Ok(format!("{} checks", r.entries.len())),
        Some(e) => Err(format!("{}: {} {}", e.name, e.status.as_str(), e.residual.clone().unwrap_or_default())),
    }
}

fn ybe() -> Outcome {
    for v in [nu(1, 1), nu(0, 1), nu(-1, 3)] {
        let r = r_matrix(v, m6()).map_err(|e| e.to_string())?;
        if !yang_baxter_residual(&r.op).unwrap().is_zero() {
            return Err(format!("nonzero residual at nu = {v}"));
        }
    }
    Ok("nu = 1, 0, -1/3".into())
}

fn hecke() -> Outcome {
    for v in [nu(1, 1), nu(0, 1), nu(-1, 3)] {
        let b = braid(&r_matrix(v, m6()).unwrap());
        if !hecke_residual(&b, v, m6()).unwrap().is_zero() {
            return Err(format!("nonzero residual at nu = {v}"));
        }
    }
    Ok("nu = 1, 0, -1/3".into())
}

/// Product of adjacent braids `B_{i,i+1}` given as a list of `i`.
fn word_op(b: &TensorOperator, idx: &[usize], n: usize) -> TensorOperator {
    idx.iter().fold(TensorOperator::identity(n), |acc, &i| acc.compose(&TensorOperator::embed_adjacent(b, i, n).unwrap()))
}

fn sum_of(b: &TensorOperator, words: &[&[usize]], n: usize) -> TensorOperator {
    words.iter().fold(TensorOperator::identity(n).scale(&Scalar::zero()), |acc, w| acc.add(&word_op(b, w, n)))
}

fn binomials() -> Outcome {
    let explicit: [(usize, Exponent, Vec<Vec<&[usize]>>); 3] = [
        (2, nu(1, 1), vec![vec![&[], &[1]]]),
        (3, nu(0, 1), vec![vec![&[], &[1], &[1, 2]], vec![&[], &[2], &[2, 1]]]),
        (
            4,
            nu(-1, 3),
            vec![
                vec![&[], &[1], &[1, 2], &[1, 2, 3]],
                vec![&[], &[2], &[2, 1], &[2, 3], &[2, 1, 3], &[2, 1, 3, 2]],
                vec![&[], &[3], &[3, 2], &[3, 2, 1]],
            ],
        ),
    ];
    let mut count = 0;
    for (n, v, rows) in explicit {
        let b = braid(&r_matrix(v, m6()).unwrap());
        let ops = binomial_operators(&b, n, FROZEN_COMPOSE_SIDE).unwrap();
        for (k, words) in rows.iter().enumerate() {
            if ops[k + 1].op != sum_of(&b, words, n) {
                return Err(format!("[{n} {}] differs", k + 1));
            }
            count += 1;
        }
    }
    Ok(format!("{count} operators entry-for-entry"))
}

fn omega(n: usize, entries: &[(&str, &str)]) -> OmegaTensor {
    OmegaTensor::from_words(n, entries.iter().map(|(w, c)| (*w, s(c))))
}

fn kernels() -> Outcome {
    let c3 = "1 + q^(2/3) + q^(4/3)";
    let solutions = [
        (2, nu(1, 1), 1, vec![omega(2, &[("21", "1"), ("12", "-q")])]),
        (
            3,
            nu(0, 1),
            2,
            vec![
                omega(3, &[("211", "1"), ("112", "q"), ("121", "-(1 + q)")]),
                omega(3, &[("221", "1"), ("122", "q"), ("212", "-(1 + q)")]),
            ],
        ),
        (
            4,
            nu(-1, 3),
            3,
            vec![
                omega(4, &[("2221", "1"), ("1222", "-q"), ("2212", &format!("-q^(-1/3)*({c3})")), ("2122", c3)]),
                omega(4, &[("2111", "1"), ("1112", "-q"), ("1211", &format!("-q^(-1/3)*({c3})")), ("1121", c3)]),
                omega(
                    4,
                    &[
                        ("2211", "1 + q^(2/3)"),
                        ("1122", "-(1 + q^(2/3))"),
                        ("1221", "q^(4/3) - q^(-2/3)"),
                        ("2112", "q^(4/3) - q^(-2/3)"),
                        ("2121", "-(q + 2*q^(1/3) + q^(5/3))"),
                        ("1212", "q^(-1) + q^(-1/3) + 2*q^(1/3)"),
                    ],
                ),
            ],
        ),
    ];
    let mut dims = Vec::new();
    for (n, v, dim, sols) in solutions {
        let basis = solve_omega(n, v, m6()).map_err(|e| e.to_string())?;
        if basis.len() != dim {
            return Err(format!("N={n}: dimension {} (expected {dim})", basis.len()));
        }
        let vecs: Vec<Vec<Scalar>> = basis.iter().map(|o| o.components().to_vec()).collect();
        for (k, sol) in sols.iter().enumerate() {
            if in_span(sol.components(), &vecs).is_none() {
                return Err(format!("N={n}: printed solution {k} not in kernel"));
            }
        }
        dims.push(dim.to_string());
    }
    Ok(format!("dimensions {}", dims.join(", ")))
}

fn relations() -> Outcome {
    let t = GeneratorTable::new(&["d", "e"]).unwrap();
    let c3 = "(1 + q^(2/3) + q^(4/3))";
    let expected: [(usize, Exponent, Vec<String>); 3] = [
        (2, nu(1, 1), vec!["e*d - q*d*e".into()]),
        (3, nu(0, 1), vec!["e*d*d - (1 + q)*d*e*d + q*d*d*e".into(), "e*e*d - (1 + q)*e*d*e + q*d*e*e".into()]),
        (
            4,
            nu(-1, 3),
            vec![
                format!("e*d*d*d + {c3}*d*d*e*d - q^(-1/3)*{c3}*d*e*d*d - q*d*d*d*e"),
                "(q^(1/3) + q^(-1/3))*(e*e*d*d - d*d*e*e) + (q - q^(-1))*(d*e*e*d + e*d*d*e) \
                 + (2 + q^(-2/3) + q^(-4/3))*d*e*d*e - (2 + q^(2/3) + q^(4/3))*e*d*e*d"
                    .into(),
                format!("e*e*e*d + {c3}*e*d*e*e - q^(-1/3)*{c3}*e*e*d*e - q*d*e*e*e"),
            ],
        ),
    ];
    for (n, v, texts) in expected {
        let want: Vec<NcPoly> = texts.iter().map(|x| parse_expression(x, m6(), &t).unwrap()).collect();
        let got: Vec<NcPoly> =
            solve_omega(n, v, m6()).unwrap().iter().map(|o| relations_from_omega(o, [0, 1])).collect();
        if !same_span(&got, &want) {
            return Err(format!("N={n}: spans differ"));
        }
    }
    Ok("N = 2, 3, 4 spans equal".into())
}

fn bialgebra() -> Outcome {
    let mut total = 0;
    for v in [nu(1, 1), nu(0, 1), nu(-1, 3)] {
        let r = check_preset_bialgebra(v, None, FROZEN_EF, 4, m6()).map_err(|e| e.to_string())?;
        total += all_pass(&r).map(|_| r.entries.len()).map_err(|e| format!("nu = {v}: {e}"))?;
    }
    Ok(format!("{total} checks at bound 4, nu = 1, 0, -1/3"))
}

fn dependency() -> Outcome {
    let mut out = Vec::new();
    for (n, bound) in [(3, 6), (4, 7)] {
        let r = check_dependency(n, bound, m6()).map_err(|e| e.to_string())?;
        if r.entries.is_empty() {
            return Err(format!("N={n}: no targets"));
        }
        all_pass(&r).map_err(|e| format!("N={n}: {e}"))?;
        out.push(format!("N={n}: {} targets at bound {bound}", r.entries.len()));
    }
    Ok(out.join("; "))
}

fn dj_image() -> Outcome {
    let mut out = Vec::new();
    for n in [2, 3, 4] {
        let r = verify_dj_image(n, 6, m6()).map_err(|e| e.to_string())?;
        all_pass(&r).map_err(|e| format!("N={n}: {e}"))?;
        let q_dj = r.notes.iter().find(|(k, _)| k == "q_dj").map(|(_, v)| v.clone()).unwrap_or_default();
        out.push(format!("N={n} q_dj={q_dj}"));
    }
    Ok(out.join("; "))
}

fn oscillator() -> Outcome {
    let osc = OscillatorPresentation::new(m6()).unwrap();
    let c = CoactionMap::standard().unwrap();
    let got = covariance_constraints(&osc.relation, &c, m6()).map_err(|e| e.to_string())?;
    let want: Vec<NcPoly> = ["z*y - q^2*y*z", "x*z - q^2*z*x", "q^2*y*x - x*y - z*z + 1"]
        .iter()
        .map(|x| parse_expression(x, m6(), &c.h_table).unwrap().normalized())
        .collect();
    if got.len() != 3 {
        return Err(format!("{} constraints", got.len()));
    }
    for w in &want {
        if !got.contains(w) {
            return Err(format!("missing {}", w.display(&c.h_table)));
        }
    }
    let (coaction, _, delta) = derive_bialgebra(m6()).unwrap();
    let h = &coaction.h_table;
    all_pass(&check_comodule(&coaction, &delta, &standard_counit(h), m6()).unwrap())?;
    all_pass(&check_coassociativity(h, &delta).unwrap())?;
    Ok("3 constraints; comodule and coassociativity pass".into())
}

fn sl2() -> Outcome {
    let r = verify_sl2_substitution(6, m6()).map_err(|e| e.to_string())?;
    all_pass(&r)
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let c = rng.gen_range(-4i64..=4);
    let e = rng.gen_range(-12i64..=12);
    let base = Scalar::from_i64(c) * Scalar::t_pow(e, m6());
    if rng.gen_bool(0.2) {
        let d = Scalar::t_pow(rng.gen_range(1..=6), m6()) + Scalar::from_i64(rng.gen_range(1..=3));
        base / d
    } else {
        base
    }
}

fn random_laurent(rng: &mut ChaCha8Rng) -> Scalar {
    let mut acc = Scalar::zero();
    for _ in 0..rng.gen_range(0..=2) {
        acc = acc + Scalar::from_i64(rng.gen_range(-3i64..=3)) * Scalar::t_pow(rng.gen_range(-6i64..=6), m6());
    }
    acc
}

fn random_poly(rng: &mut ChaCha8Rng, gens: GenId, max_len: usize) -> NcPoly {
    let mut p = NcPoly::zero();
    for _ in 0..rng.gen_range(0..4) {
        let len = rng.gen_range(0..=max_len);
        let w: Vec<GenId> = (0..len).map(|_| rng.gen_range(0..gens)).collect();
        p = p.add(&NcPoly::monomial(Word::new(w), random_scalar(rng)));
    }
    p
}

fn engine_properties() -> Outcome {
    const CASES: usize = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let osc = OscillatorPresentation::new(m6()).unwrap();
    let plane = {
        let t = GeneratorTable::new(&["x", "y", "z"]).unwrap();
        let rels: Vec<NcPoly> = ["y*x - q*x*y", "z*x - q*x*z", "z*y - q*y*z"]
            .iter()
            .map(|r| parse_expression(r, m6(), &t).unwrap())
            .collect();
        RewriteSystem::from_relations(t, &rels).unwrap().complete(4).unwrap()
    };
    let systems: [(&RewriteSystem, GenId); 2] = [(&osc.system, 2), (&plane, 3)];
    for case in 0..CASES {
        let (sys, gens) = systems[case % 2];
        let p = random_poly(&mut rng, gens, 4);
        let r = random_poly(&mut rng, gens, 3);
        let np = sys.normal_form(&p);
        if sys.normal_form(&np) != np {
            return Err(format!("idempotence, case {case}"));
        }
        if sys.normal_form(&p.mul(&r)) != sys.normal_form(&np.mul(&sys.normal_form(&r))) {
            return Err(format!("congruence, case {case}"));
        }
    }
    for case in 0..CASES {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=5);
        let m = Matrix::from_rows(
            (0..rows).map(|_| (0..cols).map(|_| random_laurent(&mut rng)).collect()).collect(),
        );
        let ker = m.kernel();
        if m.rank() + ker.len() != cols || ker.iter().any(|v| !m.apply(v).iter().all(Scalar::is_zero)) {
            return Err(format!("kernel, case {case}"));
        }
    }
    let words = GeneratorTable::new(&["a", "b", "cbar", "X1p"]).unwrap();
    for case in 0..CASES {
        let p = random_poly(&mut rng, 4, 4);
        let text = p.display(&words).to_string();
        match parse_expression(&text, m6(), &words) {
            Ok(back) if back == p => {}
            _ => return Err(format!("round trip, case {case}: {text}")),
        }
    }
    Ok(format!("{CASES} cases each: idempotence+congruence, kernel exactness, parse/print"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Yang-Baxter equation", ybe),
        ("Hecke condition", hecke),
        ("binomial operators match explicit stacks", binomials),
        ("kernel dimensions and printed solutions", kernels),
        ("relation emission spans", relations),
        ("bialgebra compatibility", bialgebra),
        ("dependency of higher-order relations", dependency),
        ("Drinfeld-Jimbo correspondence", dj_image),
        ("oscillator covariance", oscillator),
        ("sl_q(2) identification", sl2),
        ("engine properties", engine_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
