//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use fuzzrisk::{Antecedent, FisDefinition, LinguisticVariable, MembershipFunction, Rule};
use rand::seq::SliceRandom;
use rand::Rng;

/// Straight-line Mamdani evaluator written from the textbook definitions,
/// sharing no code with the engine: membership from raw breakpoints,
/// min for AND, min clipping, max aggregation evaluated point by point, and
/// a discrete centroid over `n` uniform points. `None` when nothing fires.
pub fn brute_force(fis: &FisDefinition, inputs: &[f64], n: usize) -> Option<f64> {
    let xs: Vec<f64> = fis
        .inputs
        .iter()
        .zip(inputs)
        .map(|(v, &x)| x.max(v.universe.0).min(v.universe.1))
        .collect();
    let mut fired: Vec<(f64, &[f64])> = Vec::new();
    for rule in &fis.rules {
        let mut s = 1.0f64;
        for clause in &rule.antecedents {
            let pos = fis.inputs.iter().position(|v| v.name == clause.variable)?;
            let term = fis.inputs[pos]
                .terms
                .iter()
                .find(|t| t.label == clause.term)?;
            s = s.min(degree(term.mf.breakpoints(), xs[pos]));
        }
        let out = fis
            .output
            .terms
            .iter()
            .find(|t| t.label == rule.consequent)?;
        fired.push((s, out.mf.breakpoints()));
    }
    let (lo, hi) = fis.output.universe;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..n {
        let y = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let mu = fired
            .iter()
            .map(|&(s, bp)| s.min(degree(bp, y)))
            .fold(0.0f64, f64::max);
        num += y * mu;
        den += mu;
    }
    (den > 0.0).then(|| num / den)
}

/// Triangle `[a, b, c]` or trapezoid `[a, b, c, d]`, strictly increasing
/// breakpoints assumed on any edge that is evaluated.
pub fn degree(bp: &[f64], x: f64) -> f64 {
    let (a, b, c, d) = match *bp {
        [a, b, c] => (a, b, b, c),
        [a, b, c, d] => (a, b, c, d),
        _ => panic!("unexpected breakpoint count"),
    };
    if x <= a || x >= d {
        // a vertical edge at the universe boundary still has full degree
        if (x == a && a == b) || (x == d && c == d) {
            return 1.0;
        }
        return 0.0;
    }
    if x < b {
        (x - a) / (b - a)
    } else if x <= c {
        1.0
    } else {
        (d - x) / (d - c)
    }
}

/// Grid `{0, 1/(n-1), ..., 1}`.
pub fn unit_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

fn random_variable<R: Rng>(rng: &mut R, name: &str, prefix: &str) -> LinguisticVariable {
    let lo: f64 = rng.gen_range(-5.0..5.0);
    let width: f64 = rng.gen_range(0.5..10.0);
    let hi = lo + width;
    let k = rng.gen_range(2..=4usize);
    let spacing = width / (k - 1) as f64;
    let mut var = LinguisticVariable::new(name, lo, hi);
    for j in 0..k {
        let c = lo + spacing * j as f64;
        let left = c - spacing * rng.gen_range(1.0..1.5);
        let right = c + spacing * rng.gen_range(1.0..1.5);
        let mf = if rng.gen_bool(0.5) {
            MembershipFunction::triangular(left, c, right).unwrap()
        } else {
            let core_l = c - spacing * rng.gen_range(0.0..0.2);
            let core_r = c + spacing * rng.gen_range(0.0..0.2);
            MembershipFunction::trapezoidal(left, core_l, core_r, right).unwrap()
        };
        var = var.with_term(format!("{prefix}{j}"), mf);
    }
    var
}

/// A valid model with 1 to 3 inputs of 2 to 4 overlapping terms each.
/// With `complete`, every antecedent combination has a rule; otherwise a
/// random nonempty subset survives. Rules are numbered 1.. in order.
pub fn random_model<R: Rng>(rng: &mut R, complete: bool) -> FisDefinition {
    const NAMES: [&str; 5] = ["alpha", "Beta_2", "gamma_x", "d", "Epsilon"];
    let arity = rng.gen_range(1..=3usize);
    let mut names = NAMES.to_vec();
    names.shuffle(rng);
    let inputs: Vec<LinguisticVariable> = (0..arity)
        .map(|i| random_variable(rng, names[i], &format!("t{i}_")))
        .collect();
    let output = random_variable(rng, names[arity], "o_");

    let mut combos: Vec<Vec<usize>> = vec![vec![]];
    for var in &inputs {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                (0..var.terms.len()).map(move |t| {
                    let mut c = c.clone();
                    c.push(t);
                    c
                })
            })
            .collect();
    }
    combos.shuffle(rng);
    if !complete {
        let keep = rng.gen_range(1..=combos.len());
        combos.truncate(keep);
    }
    let rules = combos
        .iter()
        .enumerate()
        .map(|(i, combo)| Rule {
            index: i + 1,
            antecedents: combo
                .iter()
                .zip(&inputs)
                .map(|(&t, v)| Antecedent::new(v.name.clone(), v.terms[t].label.clone()))
                .collect(),
            consequent: output.terms[rng.gen_range(0..output.terms.len())]
                .label
                .clone(),
        })
        .collect();
    let quirks = ["", " \"quoted\"", " back\\slash", " # not a comment"];
    FisDefinition {
        name: format!(
            "random {}{}",
            rng.gen::<u16>(),
            quirks[rng.gen_range(0..quirks.len())]
        ),
        inputs,
        output,
        rules,
    }
}

/// Random point inside every input universe.
pub fn random_point<R: Rng>(rng: &mut R, fis: &FisDefinition) -> Vec<f64> {
    fis.inputs
        .iter()
        .map(|v| rng.gen_range(v.universe.0..=v.universe.1))
        .collect()
}

/// Every `tests/fixtures/invalid/*.fis`, sorted by path, with its text.
pub fn invalid_fixtures() -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/invalid");
    let mut files: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "fis"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect()
}

/// `# expect LINE:COL MESSAGE-FRAGMENT` on a fixture's first line.
pub fn expectation(text: &str) -> (usize, usize, &str) {
    let rest = text
        .lines()
        .next()
        .and_then(|l| l.strip_prefix("# expect "))
        .expect("fixture starts with an expectation line");
    let (pos, fragment) = rest.split_once(' ').unwrap();
    let (line, col) = pos.split_once(':').unwrap();
    (line.parse().unwrap(), col.parse().unwrap(), fragment)
}
