//! Scripted experiments with tabular output.
//!
//! Each run produces an [`ExperimentOutput`]: the effective configuration,
//! a content hash of it, a table, and the in-run assertions. CSV values are
//! written with 17 significant digits; nothing time-dependent is recorded,
//! so reruns are byte-identical.

use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::best_approx::{best_uniform, jackson_ratio};
use crate::error::{Error, Result};
use crate::functions::{bernstein_row, Func};
use crate::generator::{build_generator_from, loglog_slope};
use crate::moduli::{bound_envelope, omega_dt, EnvelopeKind, StepWeight};
use crate::operators::{moment_profile, OperatorSpec};
use crate::scalar::DEFAULT_PRECISION_BITS;
use crate::shape::{check_k_monotone_fn, check_k_monotone_poly, DEFAULT_TOL};

/// Every knob an experiment reads. Unset options take the documented
/// per-subcommand defaults, and the effective values are written back
/// before hashing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub subcommand: String,
    pub function: Option<String>,
    pub operator: Option<String>,
    pub n: Option<usize>,
    pub n_list: Vec<usize>,
    pub q: Option<usize>,
    pub r: Option<usize>,
    pub k: Option<usize>,
    pub lambda: Option<f64>,
    pub eps: Option<f64>,
    pub eps_list: Vec<f64>,
    pub t_list: Vec<f64>,
    pub x_grid: Option<usize>,
    pub discretization: Option<usize>,
    pub seed: u64,
    pub precision_bits: u32,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            subcommand: String::new(),
            function: None,
            operator: None,
            n: None,
            n_list: Vec::new(),
            q: None,
            r: None,
            k: None,
            lambda: None,
            eps: None,
            eps_list: Vec::new(),
            t_list: Vec::new(),
            x_grid: None,
            discretization: None,
            seed: 0,
            precision_bits: DEFAULT_PRECISION_BITS,
        }
    }
}

impl ExperimentConfig {
    pub fn new(subcommand: &str) -> Self {
        Self {
            subcommand: subcommand.into(),
            ..Self::default()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Git-style blob hash of the canonical JSON encoding.
    pub fn content_hash(&self) -> String {
        let body = serde_json::to_string(self).expect("config serializes");
        let mut h = Sha256::new();
        h.update(format!("blob {}\0", body.len()).as_bytes());
        h.update(body.as_bytes());
        hex::encode(h.finalize())
    }

    fn function(&self, default: &str) -> Result<Func> {
        Func::parse(self.function.as_deref().unwrap_or(default))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => fmt17(*v),
            Cell::Text(s) => s.clone(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(v) => Some(*v as f64),
            Cell::Num(v) => Some(*v),
            Cell::Text(_) => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(v.to_string())
    }
}

/// 17 significant digits.
pub fn fmt17(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.16e}")
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Vec<f64> {
        let Some(i) = self.columns.iter().position(|c| c == name) else {
            return Vec::new();
        };
        self.rows.iter().filter_map(|r| r[i].as_f64()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Assertion {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentOutput {
    pub config: ExperimentConfig,
    pub content_hash: String,
    pub table: Table,
    pub assertions: Vec<Assertion>,
    pub summary: BTreeMap<String, Value>,
}

impl ExperimentOutput {
    fn new(config: ExperimentConfig, table: Table, assertions: Vec<Assertion>) -> Self {
        Self {
            content_hash: config.content_hash(),
            config,
            table,
            assertions,
            summary: BTreeMap::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn assertion(&self, name: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.name == name)
    }

    /// CSV with the configuration and its hash as leading `#` lines.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "# config: {}\n",
            serde_json::to_string(&self.config).expect("config serializes")
        ));
        s.push_str(&format!("# content-hash: {}\n", self.content_hash));
        s.push_str(&self.table.columns.join(","));
        s.push('\n');
        for row in &self.table.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = self
            .table
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::render).collect())
            .collect();
        json!({
            "config": self.config,
            "content_hash": self.content_hash,
            "columns": self.table.columns,
            "rows": rows,
            "assertions": self.assertions,
            "summary": self.summary,
        })
    }

    /// Writes `path` as CSV, or as JSON when it ends in `.json`; CSV output
    /// gets a `.json` sidecar with the assertions and summary.
    pub fn write(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(&self.to_json())? + "\n";
        if path.extension().is_some_and(|e| e == "json") {
            std::fs::write(path, json)?;
        } else {
            std::fs::write(path, self.to_csv())?;
            std::fs::write(path.with_extension("json"), json)?;
        }
        Ok(())
    }
}

fn median(v: &[f64]) -> f64 {
    let mut s: Vec<f64> = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// `max <= 10 * median` with all values finite.
fn bounded_constant(name: &str, values: &[f64]) -> Assertion {
    let finite = values.iter().all(|v| v.is_finite());
    let (mx, med) = (max_of(values), median(values));
    Assertion::new(
        name,
        finite && !values.is_empty() && mx <= 10.0 * med,
        format!("max {} median {}", fmt17(mx), fmt17(med)),
    )
}

/// Maps `f` over independent experiment cells on scoped threads, keeping
/// input order so the output does not depend on scheduling.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let f = &f;
    std::thread::scope(|s| {
        let handles: Vec<_> = items.iter().map(|it| s.spawn(move || f(it))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|e| std::panic::resume_unwind(e)))
            .collect()
    })
}

/// Error ratio with the convention `0/0 = 0`.
fn ratio(err: f64, modulus: f64) -> f64 {
    if modulus > 0.0 {
        err / modulus
    } else if err <= 1e-12 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// `B_n(f, x)` by summing every term with `f64` Bernstein weights.
pub fn bernstein_sum(f: &dyn Fn(f64) -> f64, n: usize, x: f64) -> f64 {
    let mut w = vec![0.0; n + 1];
    bernstein_row(n, &x, &mut w);
    w.iter()
        .enumerate()
        .map(|(k, wk)| wk * f(k as f64 / n as f64))
        .sum()
}

/// Bernstein polynomials of `x^eps`: midpoint errors, the Voronovskaya
/// product, and the envelope `gamma_{n,lambda}(x)^beta` with
/// `beta = min(2, eps/(1 - lambda/2))`.
pub fn run_bernstein_xeps(eps: f64, lambda: f64, n_list: &[usize]) -> Result<(Table, Vec<Assertion>)> {
    if !(eps > 0.0 && eps < 1.0) || !(0.0..2.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < eps < 1 and 0 <= lambda < 2, got eps={eps} lambda={lambda}"
        )));
    }
    let f = move |x: f64| x.powf(eps);
    let beta = (eps / (1.0 - lambda / 2.0)).min(2.0);
    let env = |n: usize, x: f64| -> Result<f64> {
        Ok(bound_envelope(EnvelopeKind::BernsteinGamma, n, lambda, x, None)?.powf(beta))
    };
    let mid = 0.5f64;
    let limit = eps * (1.0 - eps) / 2.0 * mid.powf(eps - 2.0) * StepWeight::phi(mid).powi(2);
    let mut table = Table::new(&[
        "n",
        "error_mid",
        "voronovskaya",
        "envelope_mid",
        "ratio_mid",
        "x_edge",
        "error_edge",
        "envelope_edge",
        "ratio_edge",
    ]);
    let (mut rm, mut re, mut last_v) = (Vec::new(), Vec::new(), (0usize, f64::NAN));
    if n_list.contains(&0) {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let sums = par_map(n_list, |&n| {
        let xe = 1.0 / (n as f64 * n as f64);
        (
            f(mid) - bernstein_sum(&f, n, mid),
            (f(xe) - bernstein_sum(&f, n, xe)).abs(),
        )
    });
    for (&n, (signed, erre)) in n_list.iter().zip(sums) {
        let err = signed.abs();
        let em = env(n, mid)?;
        let xe = 1.0 / (n as f64 * n as f64);
        let ee = env(n, xe)?;
        rm.push(err / em);
        re.push(erre / ee);
        last_v = (n, n as f64 * signed);
        table.push(vec![
            n.into(),
            err.into(),
            (n as f64 * signed).into(),
            em.into(),
            (err / em).into(),
            xe.into(),
            erre.into(),
            ee.into(),
            (erre / ee).into(),
        ]);
    }
    let rel = (last_v.1 / limit - 1.0).abs();
    let assertions = vec![
        Assertion::new(
            "voronovskaya",
            rel <= 0.05,
            format!(
                "n={} product {} limit {} rel {}",
                last_v.0,
                fmt17(last_v.1),
                fmt17(limit),
                fmt17(rel)
            ),
        ),
        bounded_constant("midpoint_constant_stable", &rm),
        bounded_constant("edge_constant_stable", &re),
    ];
    Ok((table, assertions))
}

/// `|f - M_n f|(x)` against `omega_2^{phi^lambda}(f, arg)` with the
/// corollary argument `n^{-1} phi^{1-lambda/2} (phi + 1/n)^{-lambda/2}`.
pub fn run_mn_error_study(
    q: usize,
    lambda: f64,
    f: &Func,
    n_list: &[usize],
    x_points: usize,
) -> Result<(Table, Vec<Assertion>)> {
    let xs = crate::best_approx::chebyshev_nodes(x_points);
    let fe = |x: f64| f.eval(x);
    let mut table = Table::new(&["n", "x", "error", "envelope_arg", "omega", "ratio"]);
    let mut per_n = Vec::new();
    let mut max_err = 0f64;
    let mut e2_dev = 0f64;
    let is_e2 = matches!(f, Func::Power(2));
    let images = par_map(n_list, |&n| -> Result<_> {
        let spec = OperatorSpec::mn(q, n)?;
        let image = spec.image_f64(f)?;
        let alpha = if is_e2 {
            moment_profile(&spec)?.alpha_n
        } else {
            0.0
        };
        Ok((image, alpha))
    });
    for (&n, cell) in n_list.iter().zip(images) {
        let (image, alpha) = cell?;
        let mut worst = 0f64;
        for &x in &xs {
            let err = (f.eval(x) - image.eval(&x)?).abs();
            let arg = bound_envelope(EnvelopeKind::Cor13, n, lambda, x, None)?;
            let w = if arg > 0.0 {
                omega_dt(&fe, 2, lambda, arg).value
            } else {
                0.0
            };
            let r = ratio(err, w);
            worst = worst.max(r);
            max_err = max_err.max(err);
            if is_e2 {
                e2_dev = e2_dev.max((err - alpha * x * (1.0 - x)).abs());
            }
            table.push(vec![
                n.into(),
                x.into(),
                err.into(),
                arg.into(),
                w.into(),
                r.into(),
            ]);
        }
        per_n.push(worst);
    }
    let mut assertions = vec![
        Assertion::new(
            "ratios_finite",
            per_n.iter().all(|v| v.is_finite()),
            format!(
                "per-n max ratios {:?}",
                per_n.iter().map(|v| fmt17(*v)).collect::<Vec<_>>()
            ),
        ),
        bounded_constant("max_ratio_bounded", &per_n),
    ];
    if f.degree().is_some_and(|d| d <= 1) {
        assertions.push(Assertion::new(
            "linear_exact",
            max_err <= 1e-12,
            format!("max error {}", fmt17(max_err)),
        ));
    }
    if is_e2 {
        assertions.push(Assertion::new(
            "e2_identity",
            e2_dev <= 1e-12,
            format!("max |error - alpha_n phi^2| {}", fmt17(e2_dev)),
        ));
    }
    Ok((table, assertions))
}

/// `omega_2^{phi^2}(g_eps, 1)` and `E_n(g_eps)` for `g_eps = ln(x + eps)`.
pub fn run_lambda2_counterexample(
    eps_list: &[f64],
    n: usize,
    big_n: usize,
) -> Result<(Table, Vec<Assertion>)> {
    let mut table = Table::new(&["eps", "omega", "omega_argmax_x", "error", "equioscillation"]);
    let (mut ws, mut es) = (Vec::new(), Vec::new());
    if let Some(eps) = eps_list.iter().find(|e| !(**e > 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let cells = par_map(eps_list, |&eps| {
        let g = move |x: f64| (x + eps).ln();
        (omega_dt(&g, 2, 2.0, 1.0), best_uniform(&g, n, big_n))
    });
    for (&eps, (w, e)) in eps_list.iter().zip(cells) {
        let e = e?;
        ws.push(w.value);
        es.push(e.error);
        table.push(vec![
            eps.into(),
            w.value.into(),
            w.argmax_x.into(),
            e.error.into(),
            e.equioscillation.into(),
        ]);
    }
    let wmin = ws.iter().copied().fold(f64::INFINITY, f64::min);
    let wmax = max_of(&ws);
    let growth = es.last().copied().unwrap_or(f64::NAN) / es.first().copied().unwrap_or(f64::NAN);
    let assertions = vec![
        Assertion::new(
            "modulus_bounded",
            wmax <= 2.0 * wmin,
            format!("max/min {}", fmt17(wmax / wmin)),
        ),
        Assertion::new(
            "error_increasing",
            es.windows(2).all(|w| w[1] > w[0]),
            format!("errors {:?}", es.iter().map(|v| fmt17(*v)).collect::<Vec<_>>()),
        ),
        Assertion::new(
            "error_growth",
            growth > 3.0,
            format!("last/first {}", fmt17(growth)),
        ),
    ];
    Ok((table, assertions))
}

/// Deficiencies, sign checks and slope fit for the generators of order `r`.
pub fn run_generator_report(r: usize, n_list: &[usize], bits: u32) -> Result<(Table, Vec<Assertion>)> {
    let mut cols = vec![
        "n",
        "m",
        "degree",
        "precision_bits",
        "integral_error",
        "delta_1",
        "delta_2",
        "delta_3",
        "delta_4",
        "n2_delta_2",
    ];
    let names: Vec<String> = (0..=r).map(|nu| format!("min_rel_d{nu}")).collect();
    cols.extend(names.iter().map(|s| s.as_str()));
    cols.push("signs");
    let mut table = Table::new(&cols);
    let (mut ns, mut d2, mut int_err, mut min_rel) = (Vec::new(), Vec::new(), 0f64, 0f64);
    let built = par_map(n_list, |&n| build_generator_from(n, r, bits));
    for (&n, g) in n_list.iter().zip(built) {
        let g = g?;
        let ie = (g.integral.clone() - 1u32).abs().to_f64();
        int_err = int_err.max(ie);
        let worst = g.derivative_min_rel.iter().copied().fold(f64::INFINITY, f64::min);
        min_rel = min_rel.min(worst);
        let delta: Vec<f64> = (1..=4).map(|mu| g.delta(mu).to_f64()).collect();
        ns.push(n as f64);
        d2.push(delta[1]);
        let mut row: Vec<Cell> = vec![
            n.into(),
            g.m.into(),
            g.p.degree().into(),
            (g.precision_bits as usize).into(),
            ie.into(),
        ];
        row.extend(delta.iter().map(|v| Cell::from(*v)));
        row.push((n as f64 * n as f64 * delta[1]).into());
        row.extend(g.derivative_min_rel.iter().map(|v| Cell::from(*v)));
        row.push(if worst >= -1e-15 { "pass" } else { "fail" }.into());
        table.push(row);
    }
    let n2: Vec<f64> = ns.iter().zip(&d2).map(|(n, d)| n * n * d).collect();
    let spread = max_of(&n2) / n2.iter().copied().fold(f64::INFINITY, f64::min);
    let mut assertions = vec![
        Assertion::new(
            "unit_integral",
            int_err <= 1e-20,
            format!("max |∫P - 1| {}", fmt17(int_err)),
        ),
        Assertion::new(
            "derivative_signs",
            min_rel >= -1e-15,
            format!("worst min/sup {}", fmt17(min_rel)),
        ),
        Assertion::new(
            "n2_delta2_stable",
            spread <= 4.0,
            format!("max/min {}", fmt17(spread)),
        ),
    ];
    if ns.len() >= 2 {
        let slope = loglog_slope(&ns, &d2);
        assertions.push(Assertion::new(
            "delta2_slope",
            (-2.4..=-1.6).contains(&slope),
            format!("slope {}", fmt17(slope)),
        ));
    }
    Ok((table, assertions))
}

/// `E_n^{(q)}(f)`, `omega_2^phi(f, 1/n)` and their ratio.
pub fn run_jackson(f: &Func, q: usize, n_list: &[usize]) -> Result<(Table, Vec<Assertion>)> {
    let fe = |x: f64| f.eval(x);
    let mut table = Table::new(&["n", "error", "omega", "ratio", "resolved"]);
    let (mut ratios, mut all_resolved) = (Vec::new(), true);
    let cells = par_map(n_list, |&n| jackson_ratio(&fe, q, n));
    for (&n, j) in n_list.iter().zip(cells) {
        let j = j?;
        all_resolved &= j.resolved || j.error <= 1e-12 && j.ratio == 0.0;
        ratios.push(j.ratio);
        table.push(vec![
            n.into(),
            j.error.into(),
            j.modulus.into(),
            j.ratio.into(),
            j.resolved.into(),
        ]);
    }
    let assertions = vec![
        Assertion::new(
            "errors_resolved",
            all_resolved,
            "every error is above the double-precision noise level of f",
        ),
        bounded_constant("ratio_bounded", &ratios),
    ];
    Ok((table, assertions))
}

/// Random nonnegative piecewise-linear inputs with 2 to 9 interior knots.
pub fn random_nonnegative_inputs(seed: u64, count: usize) -> Vec<Func> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let interior = rng.gen_range(2..10);
            let mut xs: Vec<f64> = (0..interior).map(|_| rng.gen_range(0.01..0.99)).collect();
            xs.sort_by(f64::total_cmp);
            xs.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
            let mut pts = vec![(0.0, rng.gen_range(0.0..1.0))];
            pts.extend(xs.into_iter().map(|x| (x, rng.gen_range(0.0..1.0))));
            pts.push((1.0, rng.gen_range(0.0..1.0)));
            Func::piecewise_linear(pts).expect("knots are increasing")
        })
        .collect()
}

fn need<T>(v: Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidParameter(format!("missing parameter {what}")))
}

/// Fills defaults for `cfg.subcommand`, runs it and packages the result.
pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut cfg = cfg.clone();
    let mut summary = BTreeMap::new();
    let (table, assertions) = match cfg.subcommand.as_str() {
        "gen-poly" => {
            let n = need(cfg.n, "n")?;
            let r = *cfg.r.get_or_insert(1);
            let g = build_generator_from(n, r, cfg.precision_bits)?;
            let mut t = Table::new(&["k", "coefficient"]);
            for (k, c) in g.p.coeffs().iter().enumerate() {
                t.push(vec![k.into(), Cell::Text(c.to_string_radix(10, Some(40)))]);
            }
            summary.insert("generator".into(), serde_json::to_value(g.to_json())?);
            let ie = (g.integral.clone() - 1u32).abs().to_f64();
            let worst = g.derivative_min_rel.iter().copied().fold(f64::INFINITY, f64::min);
            let a = vec![
                Assertion::new("unit_integral", ie <= 1e-20, format!("|∫P - 1| {}", fmt17(ie))),
                Assertion::new(
                    "derivative_signs",
                    worst >= -1e-15,
                    format!("worst min/sup {}", fmt17(worst)),
                ),
            ];
            (t, a)
        }
        "apply" => {
            let spec_s = need(cfg.operator.clone(), "operator")?;
            let mut spec = OperatorSpec::parse(&spec_s)?;
            if !matches!(
                spec.kind,
                crate::operators::OperatorKind::Gavrea(_) | crate::operators::OperatorKind::Mn(_)
            ) {
                spec.precision_bits = cfg.precision_bits;
            }
            let f = cfg.function("exp")?;
            cfg.function = Some(f.name());
            let grid = *cfg.x_grid.get_or_insert(101);
            let image = spec.image_f64(&f)?;
            let mut t = Table::new(&["x", "f", "Lf", "error"]);
            for i in 0..grid.max(2) {
                let x = i as f64 / (grid.max(2) - 1) as f64;
                let (fx, lx) = (f.eval(x), image.eval(&x)?);
                t.push(vec![x.into(), fx.into(), lx.into(), (fx - lx).abs().into()]);
            }
            summary.insert("operator".into(), json!(spec.name()));
            (t, Vec::new())
        }
        "moduli" => {
            let f = cfg.function("exp")?;
            cfg.function = Some(f.name());
            let k = *cfg.k.get_or_insert(2);
            let lambda = *cfg.lambda.get_or_insert(1.0);
            if cfg.t_list.is_empty() {
                cfg.t_list = (1..=10).map(|i| (-(i as f64)).exp2()).collect();
            }
            let fe = |x: f64| f.eval(x);
            let mut t = Table::new(&["t", "value"]);
            let mut ts = cfg.t_list.clone();
            ts.sort_by(f64::total_cmp);
            let mut vals = Vec::new();
            for &tt in &cfg.t_list {
                let m = omega_dt(&fe, k, lambda, tt);
                summary.insert("h_grid_size".into(), json!(m.h_grid_size));
                summary.insert("x_grid_size".into(), json!(m.x_grid_size));
                t.push(vec![tt.into(), m.value.into()]);
            }
            for &tt in &ts {
                vals.push(omega_dt(&fe, k, lambda, tt).value);
            }
            let a = vec![Assertion::new(
                "nondecreasing_in_t",
                vals.windows(2).all(|w| w[1] >= w[0]),
                "estimates sorted by t",
            )];
            (t, a)
        }
        "shape" => {
            let f = cfg.function("exp")?;
            cfg.function = Some(f.name());
            let k = *cfg.k.get_or_insert(2);
            let report = match f.as_polynomial() {
                Some(p) => check_k_monotone_poly(&p, k, DEFAULT_TOL)?,
                None => {
                    let grid = *cfg.x_grid.get_or_insert(1025);
                    check_k_monotone_fn(&|x| f.eval(x), k, grid, 40, DEFAULT_TOL)
                }
            };
            let mut t = Table::new(&["k", "verdict", "min_value", "threshold", "bernstein_certificate"]);
            t.push(vec![
                k.into(),
                if report.passed() { "pass" } else { "fail" }.into(),
                report.min_value.into(),
                report.threshold.into(),
                report.bernstein_certificate.map_or(Cell::from("n/a"), Cell::from),
            ]);
            summary.insert("report".into(), serde_json::to_value(&report)?);
            let mut a = Vec::new();
            if let Some(known) = f.known_monotone(k) {
                a.push(Assertion::new(
                    "agrees_with_known_shape",
                    known == report.passed(),
                    format!("known {known}, verdict {}", report.passed()),
                ));
            }
            (t, a)
        }
        "jackson" => {
            let f = cfg.function("exp")?;
            cfg.function = Some(f.name());
            let q = *cfg.q.get_or_insert(4);
            if cfg.n_list.is_empty() {
                cfg.n_list = (10..=40).step_by(5).collect();
            }
            run_jackson(&f, q, &cfg.n_list)?
        }
        "bern-xeps" => {
            let eps = *cfg.eps.get_or_insert(0.5);
            let lambda = *cfg.lambda.get_or_insert(2.0 - eps);
            if cfg.n_list.is_empty() {
                cfg.n_list = (4..=14).map(|i| 1usize << i).collect();
            }
            run_bernstein_xeps(eps, lambda, &cfg.n_list)?
        }
        "mn-study" => {
            let f = cfg.function("exp")?;
            cfg.function = Some(f.name());
            let q = *cfg.q.get_or_insert(3);
            let lambda = *cfg.lambda.get_or_insert(1.0);
            let xg = *cfg.x_grid.get_or_insert(17);
            if cfg.n_list.is_empty() {
                cfg.n_list = (20..=120).step_by(20).collect();
            }
            run_mn_error_study(q, lambda, &f, &cfg.n_list, xg)?
        }
        "lambda2" => {
            if cfg.eps_list.is_empty() {
                cfg.eps_list = vec![1e-2, 1e-4, 1e-6, 1e-8];
            }
            let n = *cfg.n.get_or_insert(5);
            let big_n = *cfg.discretization.get_or_insert(257);
            run_lambda2_counterexample(&cfg.eps_list, n, big_n)?
        }
        "gen-report" => {
            let r = *cfg.r.get_or_insert(1);
            if cfg.n_list.is_empty() {
                cfg.n_list = [32usize, 64, 128, 256, 512]
                    .into_iter()
                    .filter(|&n| n > 8 * r)
                    .collect();
            }
            run_generator_report(r, &cfg.n_list, cfg.precision_bits)?
        }
        other => return Err(Error::InvalidParameter(format!("unknown subcommand {other:?}"))),
    };
    let mut out = ExperimentOutput::new(cfg, table, assertions);
    out.summary = summary;
    Ok(out)
}
