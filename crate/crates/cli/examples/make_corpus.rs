//! Regenerates the sample scenarios: `cargo run --example make_corpus -- DIR`.

use std::path::PathBuf;

use capinf_core::gen;
use capinf_core::search::Target;
use capinf_core::selectors::{omochar_forward, tails_gamma};
use capinf_core::{AInfWitness, ClopenSet, CoverFamily, IndexFamily, NatSet, Point, Universe};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn points(words: &[&str]) -> Universe {
    Universe::new(words.iter().map(|w| Point::parse(w).unwrap()).collect()).unwrap()
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "scenarios".into()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut out: Vec<(&str, Value)> = Vec::new();

    let x = points(&["(0)", "1(0)", "(01)"]);
    let u = gen::gamma_cover(&mut rng(1), &x);
    out.push((
        "classify-gamma",
        json!({"description": "Rule-based gamma-cover of three points", "universe": x, "cover": u, "params": {"target": "gamma"}}),
    ));

    let x1 = points(&["(0)", "(1)"]);
    let explicit = CoverFamily::Explicit {
        members: vec![
            ClopenSet::parse_words(&["0".into()]).unwrap(),
            ClopenSet::parse_words(&["1".into()]).unwrap(),
        ],
    };
    out.push((
        "classify-explicit",
        json!({"description": "Finite list of members: gamma is undecidable", "universe": x1, "cover": explicit, "params": {"target": "gamma"}}),
    ));

    let (x, u, w) = gen::cover_instance(&mut rng(2), 3).unwrap();
    out.push(("ainf-cover", json!({"description": "Derived family of a searched witness", "universe": x, "cover": u, "witness": w, "params": {"target": "cover"}})));

    let finite = AInfWitness { index_sets: IndexFamily::List { sets: vec![NatSet::parse("evens").unwrap(), NatSet::parse("finite:1,2").unwrap()] } };
    out.push((
        "ainf-finite-index",
        json!({"description": "Second index set is finite: rejected", "universe": x, "cover": u, "witness": finite}),
    ));

    let x = points(&["(0)", "01(1)", "(10)"]);
    let u = gen::gamma_cover(&mut rng(3), &x);
    out.push(("select-tails", json!({"universe": x, "cover": u, "params": {"combinator": "tails"}})));

    let w = tails_gamma(&u, &x, 64).unwrap();
    out.push(("select-from-witness", json!({"universe": x, "cover": u, "witness": w, "params": {"combinator": "from-witness"}})));

    let covers = gen::gamma_covers(&mut rng(4), &x, 3);
    out.push(("select-capinf-gg", json!({"universe": x, "covers": covers, "params": {"combinator": "capinf-gg"}})));

    let (x, covers, slots, w) = gen::sakai_instance(&mut rng(5), 3).unwrap();
    out.push((
        "select-sakai",
        json!({"universe": x, "covers": covers, "slots": slots, "witness": w, "params": {"combinator": "sakai"}}),
    ));

    let x = points(&["(0)", "1(0)", "01(1)", "(10)"]);
    let levels = gen::level_witness(&mut rng(6), &x);
    out.push(("select-smz", json!({"universe": x, "levels": levels, "params": {"combinator": "smz", "depths": "affine:1,0"}})));

    let x = points(&["(0)", "1(0)", "(01)"]);
    let u = gen::omega_schedule(&mut rng(7), &x);
    out.push((
        "select-marczewski-repeats",
        json!({"description": "A periodic schedule repeats members: not a bijective enumeration", "universe": x, "cover": u, "params": {"combinator": "marczewski"}}),
    ));
    let u = gen::gamma_cover(&mut rng(7), &x);
    out.push(("select-marczewski", json!({"universe": x, "cover": u, "params": {"combinator": "marczewski"}})));

    let (x, u, w) = gen::cover_instance(&mut rng(8), 3).unwrap();
    let fwd = omochar_forward(&w, &u, &x, 64).unwrap();
    out.push(("select-omochar-fwd", json!({"universe": x, "cover": u, "witness": w, "params": {"combinator": "omochar-fwd"}})));
    out.push((
        "select-omochar-bwd",
        json!({"universe": x, "cover": u, "decomposition": fwd.decomposition, "params": {"combinator": "omochar-bwd"}}),
    ));

    let x = points(&["(0)", "1(0)", "(01)", "11(0)"]);
    let grid = gen::grid(&mut rng(9));
    let g = gen::bound(&mut rng(10));
    for mode in ["borel-gamma", "borel-omega"] {
        out.push((
            if mode == "borel-gamma" { "select-borel-gamma" } else { "select-borel-omega" },
            json!({"universe": x, "grid": grid, "params": {"combinator": mode, "bound": g}}),
        ));
    }

    let (pencil, k, selections, w) = gen::pencil(&mut rng(11));
    out.push((
        "select-hurewicz",
        json!({"universe": points(&["(0)"]), "pencil": pencil, "selections": selections, "witness": w, "params": {"combinator": "hurewicz", "start": k}}),
    ));

    let (x, u, ws) = gen::powers_instance(&mut rng(12), 3, 3).unwrap();
    out.push(("select-powers", json!({"universe": x, "cover": u, "witnesses": ws, "params": {"combinator": "powers", "max_power": 3}})));

    let x = points(&["(0)", "1(0)", "(01)"]);
    let u = gen::gamma_cover(&mut rng(13), &x);
    let w = tails_gamma(&u, &x, 64).unwrap();
    out.push((
        "oracle-check",
        json!({"universe": x, "cover": u, "witness": w, "params": {"target": Target::Gamma, "search": {"depth": 2, "max_tail": 4, "max_modulus": 4, "horizon": 32}}}),
    ));

    for (name, value) in out {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&value).unwrap() + "\n").unwrap();
        println!("{}", path.display());
    }
}
