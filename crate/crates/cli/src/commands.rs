use cmvscat::classify::{self as cls, ClassifyInput, WidomRow};
use cmvscat::hankel::regularity_test;
use cmvscat::inverse::{glm_factorization_residual, glm_matrix, l_matrix, recover_verblunsky};
use cmvscat::opuc::spectral_density;
use cmvscat::scatter::{forward_scatter, Sidecar};
use serde_json::json;

use crate::config::{
    csv_bytes, emit, json_bytes, read_sequence, read_symbol, read_text, sidecar_path, CliResult,
    Failure, RunConfig,
};
use crate::Flags;

pub fn forward(flags: &Flags) -> CliResult<String> {
    let cfg = RunConfig::new("forward", flags)?;
    let out = flags
        .out
        .as_deref()
        .ok_or_else(|| Failure::input("forward needs --out for the s CSV"))?;
    let seq = read_sequence(cfg.input_path()?)?;
    let data = forward_scatter(&seq, cfg.grid())?;
    emit(Some(out), &csv_bytes(&data.s, &cfg.comment())?)?;
    let side = serde_json::to_value(data.sidecar(Some(cfg.json())))
        .map_err(|e| Failure::input(e.to_string()))?;
    emit(Some(&sidecar_path(out)), &json_bytes(&side))?;
    if flags.weight {
        let path = std::path::Path::new(out).with_extension("weight.csv");
        let w = spectral_density(&seq, cfg.grid());
        emit(
            Some(&path.to_string_lossy()),
            &csv_bytes(&w, &cfg.comment())?,
        )?;
    }
    Ok(format!(
        "forward: N = {}, D(0) = {:.12}, max ||s| - 1| = {:.2e}{}",
        cfg.grid,
        data.d0,
        data.unimodularity_residual(),
        if data.near_zero {
            ", weight nearly vanishes"
        } else {
            ""
        }
    ))
}

fn load_sidecar(csv: &str) -> CliResult<Option<Sidecar>> {
    let path = sidecar_path(csv);
    if !std::path::Path::new(&path).exists() {
        return Ok(None);
    }
    serde_json::from_str(&read_text(&path)?)
        .map(Some)
        .map_err(|e| Failure::input(format!("{path}: {e}")))
}

pub fn inverse(flags: &Flags) -> CliResult<String> {
    let cfg = RunConfig::new("inverse", flags)?;
    let input = cfg.input_path()?;
    let s = read_symbol(input)?;
    let sidecar = load_sidecar(input)?;
    let rep = recover_verblunsky(&s, cfg.n_max, cfg.order())?;
    let mut value = rep.to_json(Some(cfg.json()));
    if let Some(side) = &sidecar {
        value["sidecar_a_minus1_gap"] = json!((side.a_minus1 - rep.a_minus1).norm());
    }
    emit(flags.out.as_deref(), &json_bytes(&value))?;
    let summary = format!(
        "inverse: a_0 = {:.12}{:+.12}i, residual {:.2e}, regular {}",
        rep.a[0].re, rep.a[0].im, rep.residual, rep.regular
    );
    if cfg.strict && !rep.regular {
        return Err(Failure::irregular(format!(
            "{summary}; s does not determine the coefficients"
        )));
    }
    Ok(summary)
}

pub fn roundtrip(flags: &Flags) -> CliResult<String> {
    let cfg = RunConfig::new("roundtrip", flags)?;
    let seq = read_sequence(cfg.input_path()?)?;
    let data = forward_scatter(&seq, cfg.grid())?;
    let rep = recover_verblunsky(&data.s, cfg.n_max, cfg.order())?;
    let coefficient_error = (0..=cfg.n_max)
        .map(|n| (rep.a[n] - seq.get(n)).norm())
        .fold(0.0, f64::max);
    let a_minus1_error = (rep.a_minus1 - seq.a_minus1()).norm();
    let value = json!({
        "config": cfg.json(),
        "input": seq,
        "recovered": rep.to_json(None),
        "coefficient_error": coefficient_error,
        "a_minus1_error": a_minus1_error,
    });
    emit(flags.out.as_deref(), &json_bytes(&value))?;
    let summary = format!(
        "roundtrip: max |Δa_n| = {coefficient_error:.2e}, |Δa_-1| = {a_minus1_error:.2e}, regular {}",
        rep.regular
    );
    if cfg.strict && !rep.regular {
        return Err(Failure::irregular(summary));
    }
    Ok(summary)
}

pub fn widom(flags: &Flags) -> CliResult<String> {
    let mut flags = flags.clone();
    flags.trunc.get_or_insert_with(|| "64,128,256".into());
    let cfg = RunConfig::new("widom", &flags)?;
    let seq = read_sequence(cfg.input_path()?)?;
    let rows = cls::widom_det(&seq, cfg.grid(), &cfg.trunc)?;
    let mut text = format!("# {}\n{}\n", cfg.comment(), WidomRow::csv_header());
    for row in &rows {
        text.push_str(&row.csv_line());
        text.push('\n');
    }
    emit(flags.out.as_deref(), text.as_bytes())?;
    let last = rows.last().expect("at least one order");
    Ok(format!(
        "widom: M = {}, det = {:.12}, product = {:.12}, gap = {:.2e}",
        last.order, last.det, last.product, last.gap
    ))
}

pub fn classify(flags: &Flags) -> CliResult<String> {
    let cfg = RunConfig::new("classify", flags)?;
    let input = cfg.input_path()?;
    let mut req = if input.ends_with(".csv") {
        let s = read_symbol(input)?;
        let d0 = load_sidecar(input)?.map(|side| side.d0);
        ClassifyInput::from_symbol(s, d0, cfg.order())
    } else {
        ClassifyInput::from_seq(read_sequence(input)?, cfg.grid(), cfg.order())
    };
    req.radius = cfg.radius;
    req.n_max = cfg.n_max;
    let rep = cls::classify(&req)?;
    let mut value = serde_json::to_value(&rep).map_err(|e| Failure::input(e.to_string()))?;
    value["config"] = cfg.json();
    emit(flags.out.as_deref(), &json_bytes(&value))?;
    let summary = format!(
        "classify: regular {}, hs_member {}, gi_member {}, index {}",
        rep.regular,
        rep.hs_member,
        rep.gi_member,
        rep.index.map_or("unavailable".into(), |i| i.to_string())
    );
    if cfg.strict && !rep.regular {
        return Err(Failure::irregular(summary));
    }
    Ok(summary)
}

pub fn glm(flags: &Flags) -> CliResult<String> {
    let cfg = RunConfig::new("glm", flags)?;
    let block = cfg.block.expect("glm block size");
    let seq = read_sequence(cfg.input_path()?)?;
    let data = forward_scatter(&seq, cfg.grid())?;
    let m = glm_matrix(&data.s, seq.a_minus1(), block, cfg.order())?;
    let residual = glm_factorization_residual(&data.s, seq.a_minus1(), block, cfg.order())?;
    let l = l_matrix(&data.s, block.div_ceil(2), cfg.order())?;
    let predicted: Vec<f64> = (0..block).map(|n| seq.rho_product(n) / data.d0).collect();
    let value = json!({
        "config": cfg.json(),
        "residual": residual,
        "diagonal": m.diagonal(),
        "predicted_diagonal": predicted,
        "diagonal_gap": m.diagonal_gap(&seq, data.d0),
        "upper_part_max": m.upper_part_max(),
        "max_column_norm": m.max_column_norm(),
        "l_residual": l.residual,
        "l_rho": l.rho(),
    });
    emit(flags.out.as_deref(), &json_bytes(&value))?;
    Ok(format!(
        "glm: {block}x{block} block at M = {}, factorization residual {residual:.2e}",
        cfg.order()
    ))
}

pub fn demo_nonunique(flags: &Flags) -> CliResult<String> {
    let cfg = RunConfig::new("demo-nonunique", flags)?;
    let lengths = cfg.lengths.clone().expect("demo lengths");
    let rows = cls::nonunique_demo(&lengths, cfg.grid(), cfg.order(), cfg.radius)?;
    // the common limit symbol, tested against the limit weight |1 − t|⁴/6
    let t2 = cls::monomial_symbol(cfg.grid(), 2);
    let limit = regularity_test(&t2.coefficients(), 1.0 / 6f64.sqrt(), cfg.order())?;
    let mut text = format!(
        "# {}\n# t^2 with D(0) = 1/sqrt(6): lhs {:.12}, 1/D(0)^2 {:.12}, regular {}\n",
        cfg.comment(),
        limit.lhs,
        limit.rhs,
        limit.regular
    );
    text.push_str("truncation,sup_difference,l2_difference,excluded_nodes,index_first,index_second,regular_first,regular_second\n");
    let index = |i: Option<i64>| i.map_or("NA".to_string(), |i| i.to_string());
    for r in &rows {
        text.push_str(&format!(
            "{},{:.16e},{:.16e},{},{},{},{},{}\n",
            r.truncation,
            r.sup_difference,
            r.l2_difference,
            r.excluded_nodes,
            index(r.first.index),
            index(r.second.index),
            r.first.regular,
            r.second.regular
        ));
    }
    emit(flags.out.as_deref(), text.as_bytes())?;
    let diffs: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.4}", r.sup_difference))
        .collect();
    Ok(format!(
        "demo-nonunique: sup difference {} over truncations {:?}; t^2 regular {}",
        diffs.join(" -> "),
        lengths,
        limit.regular
    ))
}
