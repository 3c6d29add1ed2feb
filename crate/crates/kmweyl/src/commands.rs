//! One function per subcommand. Each turns a validated [`RunConfig`] into
//! the text printed on standard output.

use std::f64::consts::PI;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use kmweyl_core::calogero::{
    affine_orbit_family, affine_potential_terms, find_orbit_representatives, partial_sum_potential, vd_terms,
    OrbitGenerator,
};
use kmweyl_core::dynkin::{bicolour, build_extended_a, CartanMatrix, DynkinDiagram};
use kmweyl_core::invariants::{
    coxeter_angles, invariant_space, kostant_check, no_finite_order, BicolourFactorization,
};
use kmweyl_core::poly::IntPoly;
use kmweyl_core::recur::{char_roots, coxeter_recurrence, verify_closed_form, CharRoot, CharRootKind, CoxeterClosedForm};
use kmweyl_core::roots::{enumerate_real_roots_in, inner, LatticeEmbedding, RootVector};
use kmweyl_core::weyl::{coxeter_order, orbit, word_matrix, WeylWord};
use kmweyl_core::{BigInt, Label};

use crate::cache::{match_terms_parallel, OrbitCache};
use crate::config::{EvalForm, MatchMode, RunConfig};
use crate::error::{invalid, CliResult};
use crate::format::{fmt_complex, fmt_g, json_complex, json_f64, json_int, json_rational, render_json, Format, Tsv};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Orbit,
    Order,
    Recurrence,
    Invariants,
    Kostant,
    Angles,
    Roots,
    PotentialMatch,
    PotentialEval,
    Diagram,
}

impl Command {
    /// Tables default to TSV, structured reports to JSON.
    pub fn default_format(self) -> Format {
        match self {
            Command::Recurrence | Command::Invariants | Command::PotentialEval | Command::Diagram => Format::Json,
            _ => Format::Tsv,
        }
    }
}

pub fn run(cmd: Command, cfg: &RunConfig) -> CliResult<String> {
    let fmt = cfg.output.unwrap_or(cmd.default_format());
    match cmd {
        Command::Orbit => orbit_report(cfg, fmt),
        Command::Order => order_report(cfg, fmt),
        Command::Recurrence => recurrence_report(cfg, fmt),
        Command::Invariants => invariants_report(cfg, fmt),
        Command::Kostant => kostant_report(cfg, fmt),
        Command::Angles => angles_report(cfg, fmt),
        Command::Roots => roots_report(cfg, fmt),
        Command::PotentialMatch => match_report(cfg, fmt),
        Command::PotentialEval => eval_report(cfg, fmt),
        Command::Diagram => diagram_report(cfg, fmt),
    }
}

struct Algebra {
    n: usize,
    m: usize,
    diagram: DynkinDiagram,
    cartan: CartanMatrix,
}

impl Algebra {
    fn from(cfg: &RunConfig) -> CliResult<Self> {
        let (n, m) = cfg.algebra()?;
        let diagram = build_extended_a(n, m)?;
        let cartan = diagram.cartan();
        Ok(Algebra { n, m, diagram, cartan })
    }

    fn name(&self) -> String {
        format!("a{}m{}", self.n, self.m)
    }

    fn columns(&self) -> Vec<String> {
        self.cartan.labels().iter().map(|l| format!("a[{l}]")).collect()
    }

    fn embedding(&self) -> CliResult<LatticeEmbedding> {
        Ok(LatticeEmbedding::for_extended_a(&self.diagram)?)
    }

    fn word(&self, letters: Vec<Label>) -> CliResult<WeylWord> {
        let w = WeylWord::new(letters);
        w.validate(&self.cartan)?;
        Ok(w)
    }
}

fn strs(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn json_ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(json_int).collect())
}

fn orbit_report(cfg: &RunConfig, fmt: Format) -> CliResult<String> {
    let alg = Algebra::from(cfg)?;
    let word = alg.word(cfg.word()?)?;
    let seed = RootVector::from_i64(&cfg.seed()?);
    let (lo, hi) = cfg.range()?;
    let c = word_matrix(&word, &alg.cartan)?;
    let rows = orbit(&c, &seed, lo, hi)?;
    Ok(match fmt {
        Format::Tsv => {
            let mut t = Tsv::new(std::iter::once("k".to_string()).chain(alg.columns()));
            for (k, r) in &rows {
                t.push(std::iter::once(k.to_string()).chain(strs(r.coeffs())));
            }
            t.render()
        }
        Format::Json => render_json(&json!({
            "algebra": alg.name(),
            "word": word.letters(),
            "seed": json_ints(seed.coeffs()),
            "orbit": rows.iter().map(|(k, r)| json!({ "k": k, "coeffs": json_ints(r.coeffs()) })).collect::<Vec<_>>(),
        })),
    })
}

fn order_report(cfg: &RunConfig, fmt: Format) -> CliResult<String> {
    let alg = Algebra::from(cfg)?;
    let word = alg.word(cfg.word()?)?;
    let h_max = cfg.h_max.unwrap_or(10_000);
    let order = coxeter_order(&word_matrix(&word, &alg.cartan)?, h_max);
    Ok(match fmt {
        Format::Tsv => match order {
            Some(h) => format!("{h}\n"),
            None => "infinite\n".into(),
        },
        Format::Json => render_json(&json!({ "word": word.letters(), "h_max": h_max, "order": order })),
    })
}

fn poly_text(p: &IntPoly) -> String {
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let show = i == 0 || !mag.is_one();
        if show {
            out.push_str(&mag.to_string());
        }
        match i {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{i}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn exact_root(r: &CharRoot) -> String {
    match &r.kind {
        CharRootKind::Integer(v) => v.to_string(),
        CharRootKind::QuadraticSurd { a, b, d, c } => {
            let radical = if d.is_negative() { format!("i√{}", d.abs()) } else { format!("√{d}") };
            let b_part = if b.abs().is_one() { radical } else { format!("{}{radical}", b.abs()) };
            let op = if b.is_negative() { '-' } else { '+' };
            let num = format!("{a} {op} {b_part}");
            if c.is_one() {
                num
            } else {
                format!("({num})/{c}")
            }
        }
        CharRootKind::RootOfUnity { p, q } => {
            let sign = if *p < 0 { "-" } else { "" };
            format!("exp({sign}2πi·{}/{q})", p.unsigned_abs())
        }
        CharRootKind::Numeric => fmt_complex(r.value),
    }
}

fn recurrence_report(cfg: &RunConfig, fmt: Format) -> CliResult<String> {
    let alg = Algebra::from(cfg)?;
    let word = alg.word(cfg.word()?)?;
    let tol = cfg.tolerance()?;
    let c = word_matrix(&word, &alg.cartan)?;
    let rec = coxeter_recurrence(&c)?;
    let p = rec.char_poly();
    let roots = char_roots(&p);

    // closed forms are checked against exact powers on every simple root
    let closed = CoxeterClosedForm::new(&c).and_then(|cf| {
        (0..alg.cartan.rank()).try_fold(0.0f64, |worst, i| {
            Ok(worst.max(verify_closed_form(&cf, &c, &RootVector::simple(alg.cartan.rank(), i), -10..=10)?))
        })
    });
    let closed_json = match &closed {
        Ok(e) => json!({ "k_range": [-10, 10], "max_error": json_f64(*e), "tolerance": json_f64(tol), "ok": *e <= tol }),
        Err(e) => json!({ "error": e.to_string(), "ok": false }),
    };

    Ok(match fmt {
        Format::Json => render_json(&json!({
            "algebra": alg.name(),
            "word": word.letters(),
            "order": rec.order(),
            "coeffs": rec.coeffs().iter().map(json_rational).collect::<Vec<_>>(),
            "char_poly": json_ints(p.coeffs()),
            "char_poly_text": poly_text(&p),
            "roots": roots.iter().map(|r| json!({
                "kind": r.kind_name(),
                "value": json_complex(r.value),
                "exact": exact_root(r),
                "mult": r.multiplicity,
            })).collect::<Vec<_>>(),
            "closed_form": closed_json,
        })),
        Format::Tsv => {
            let mut t = Tsv::new(["kind", "exact", "re", "im", "mult"]);
            for r in &roots {
                t.push([
                    r.kind_name().to_string(),
                    exact_root(r),
                    fmt_g(r.value.re),
                    fmt_g(r.value.im),
                    r.multiplicity.to_string(),
                ]);
            }
            let coeffs: Vec<String> = rec.coeffs().iter().map(ToString::to_string).collect();
            t.footer(format!("order\t{}", rec.order()));
            t.footer(format!("coeffs\t{}", coeffs.join(",")));
            t.footer(format!("char_poly\t{}", poly_text(&p)));
            match closed {
                Ok(e) => t.footer(format!("closed_form_max_error\t{}", fmt_g(e))),
                Err(e) => t.footer(format!("closed_form_error\t{e}")),
            }
            t.render()
        }
    })
}

fn invariants_report(cfg: &RunConfig, fmt: Format) -> CliResult<String> {
    let alg = Algebra::from(cfg)?;
    let degree = cfg.degree.ok_or_else(|| crate::error::CliError::Validation("missing --degree".into()))?;
    let basis = invariant_space(&alg.cartan, degree)?;
    Ok(match fmt {
        Format::Json => render_json(&Value::Array(
            basis
                .iter()
                .map(|p| {
                    json!({
                        "degree": p.degree,
                        "monomials": p.monomials().iter().map(|(e, c)| json!({
                            "exponents": e,
                            "coeff": json_rational(c),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )),
        Format::Tsv => {
            let mut t = Tsv::new(std::iter::once("basis".to_string()).chain(alg.columns()).chain(["coeff".to_string()]));
            for (i, p) in basis.iter().enumerate() {
                for (e, c) in p.monomials() {
                    t.push(
                        std::iter::once(i.to_string())
                            .chain(e.iter().map(ToString::to_string))
                            .chain([c.to_string()]),
                    );
                }
            }
            t.footer(format!("degree\t{degree}\tdimension\t{}", basis.len()));
            t.render()
        }
    })
}

fn kostant_report(cfg: &RunConfig, fmt: Format) -> CliResult<String> {
    let alg = Algebra::from(cfg)?;
    let f = match (&cfg.minus, &cfg.plus) {
        (Some(a), Some(b)) => BicolourFactorization::new(WeylWord::new(a.values("minus")?), WeylWord::new(b.values("plus")?)),
        (None, None) => match bicolour(&alg.diagram) {
            Some(b) => BicolourFactorization::from_bicolouration(&b),
            None => return invalid(format!("{} has no bicolouration; pass --minus and --plus", alg.name())),
        },
        _ => return invalid("--minus and --plus go together"),
    };
    f.validate(&alg.diagram)?;
    let ok = kostant_check(&alg.diagram, &f)?;
    Ok(match fmt {
        Format::Tsv => format!("kostant: {}\n", if ok { "OK" } else { "FAILED" }),
        Format::Json => render_json(&json!({
            "algebra": alg.name(),
            "sigma_minus": f.sigma_minus.letters(),
            "sigma_plus": f.sigma_plus.letters(),
            "kostant": ok,
        })),
    })
}

fn angles_report(cfg: &RunConfig, fmt: Format) -> CliResult<String> {
    let alg = Algebra::from(cfg)?;
    let h_max = cfg.h_max.unwrap_or(1_000);
    let a = coxeter_angles(&alg.cartan);
    let infinite = no_finite_order(&a, h_max);
    Ok(match fmt {
        Format::Tsv => {
            let mut t = Tsv::new(["j", "lambda", "theta_re", "theta_im"]);
            for (j, (l, th)) in a.eigenvalues.iter().zip(&a.thetas).enumerate() {
                t.push([(j + 1).to_string(), fmt_g(*l), fmt_g(th.re), fmt_g(th.im)]);
            }
            t.footer(format!("eigen_relation_defect\t{}", fmt_g(a.eigen_relation_defect())));
            t.footer(format!("pairing_defect\t{}", fmt_g(a.pairing_defect())));
            t.footer(format!("no_finite_order_up_to\t{h_max}\t{infinite}"));
            t.render()
        }
        Format::Json => render_json(&json!({
            "algebra": alg.name(),
            "angles": a.eigenvalues.iter().zip(&a.thetas).map(|(l, th)| json!({
                "lambda": json_f64(*l),
                "theta": json_complex(*th),
                "real": th.im == 0.0,
            })).collect::<Vec<_>>(),
            "eigen_relation_defect": json_f64(a.eigen_relation_defect()),
            "pairing_defect": json_f64(a.pairing_defect()),
            "h_max": h_max,
            "no_finite_order": infinite,
        })),
    })
}

fn roots_report(cfg: &RunConfig, fmt: Format) -> CliResult<String> {
    let alg = Algebra::from(cfg)?;
    let bounds = cfg.bounds()?;
    let roots = enumerate_real_roots_in(&alg.cartan, &bounds)?;
    let norms: Vec<BigInt> = roots.iter().map(|r| inner(r, r, &alg.cartan)).collect::<Result<_, _>>()?;
    Ok(match fmt {
        Format::Tsv => {
            let mut t = Tsv::new(alg.columns().into_iter().chain(["norm".to_string()]));
            for (r, n) in roots.iter().zip(&norms) {
                t.push(strs(r.coeffs()).into_iter().chain([n.to_string()]));
            }
            t.render()
        }
        Format::Json => render_json(&Value::Array(
            roots
                .iter()
                .zip(&norms)
                .map(|(r, n)| json!({ "coeffs": json_ints(r.coeffs()), "norm": json_int(n) }))
                .collect(),
        )),
    })
}

/// Bounds, Coxeter word and generators of a matching mode.
fn match_setup(alg: &Algebra, mode: MatchMode, level: i64) -> CliResult<(Vec<(i64, i64)>, WeylWord)> {
    let (n, m) = (alg.n as Label, alg.m as Label);
    let fixed_below = match mode {
        MatchMode::Affine => 0,
        MatchMode::Hyperbolic => {
            if m < 1 {
                return invalid("hyperbolic mode needs m >= 1");
            }
            -1
        }
        MatchMode::Lorentzian => -m,
    };
    let bounds = alg.cartan.labels().iter().map(|&l| if l < fixed_below { (0, 0) } else { (0, level) }).collect();
    Ok((bounds, WeylWord::new((fixed_below..=n).collect())))
}

fn match_report(cfg: &RunConfig, fmt: Format) -> CliResult<String> {
    let alg = Algebra::from(cfg)?;
    let e = alg.embedding()?;
    let mode = MatchMode::parse(cfg.mode.as_deref().unwrap_or("affine"))?;
    let (level, window, g) = (cfg.level()?, cfg.kwindow()?, cfg.coupling()?);
    let (bounds, word) = match_setup(&alg, mode, level)?;
    let vd = vd_terms(&alg.cartan, &e, &bounds, g)?;
    // the affine A₂ potential has a fixed nine-orbit family; elsewhere the
    // orbits are found by a greedy cover
    let gens: Vec<OrbitGenerator> = if mode == MatchMode::Affine && alg.n == 2 {
        affine_orbit_family(&alg.cartan, g)?
    } else {
        find_orbit_representatives(&vd, &word, &alg.cartan, window, g)?
    };
    let cache = OrbitCache::new();
    let table = match_terms_parallel(&vd, &gens, &alg.cartan, window, &cache)?;

    let mut rows: Vec<(usize, Option<&kmweyl_core::calogero::MatchRow>)> =
        table.rows.iter().map(|r| (r.vd_index, Some(r))).collect();
    rows.extend(table.unmatched.iter().map(|&j| (j, None)));
    rows.sort_by_key(|r| r.0);

    Ok(match fmt {
        Format::Tsv => {
            let mut t = Tsv::new(["vd_index", "ambient_form", "orbit_id", "power", "sign"]);
            for (j, row) in &rows {
                let form = vd[*j].form_label();
                match row {
                    Some(r) => t.push([j.to_string(), form, (r.orbit + 1).to_string(), r.power.to_string(), r.sign.to_string()]),
                    None => t.push([j.to_string(), form, "-".into(), "-".into(), "-".into()]),
                }
            }
            for (i, gen) in gens.iter().enumerate() {
                let rep: Vec<String> = strs(gen.rep.coeffs());
                let w: Vec<String> = gen.word.letters().iter().map(ToString::to_string).collect();
                t.footer(format!("orbit\t{}\trep\t{}\tword\t{}", i + 1, rep.join(","), w.join(",")));
            }
            t.footer(format!("terms={}\torbits={}\tunmatched={}", vd.len(), gens.len(), table.unmatched.len()));
            t.render()
        }
        Format::Json => render_json(&json!({
            "algebra": alg.name(),
            "mode": cfg.mode.as_deref().unwrap_or("affine"),
            "level": level,
            "kwindow": window,
            "terms": vd.len(),
            "orbits": gens.len(),
            "unmatched": table.unmatched.len(),
            "generators": gens.iter().enumerate().map(|(i, gen)| json!({
                "id": i + 1,
                "rep": json_ints(gen.rep.coeffs()),
                "word": gen.word.letters(),
            })).collect::<Vec<_>>(),
            "rows": rows.iter().map(|(j, row)| json!({
                "vd_index": j,
                "root": vd[*j].root().map(|r| json_ints(r.coeffs())),
                "ambient_form": vd[*j].form_label(),
                "orbit_id": row.map(|r| r.orbit + 1),
                "power": row.map(|r| r.power),
                "sign": row.map(|r| r.sign),
            })).collect::<Vec<_>>(),
        })),
    })
}

fn eval_report(cfg: &RunConfig, fmt: Format) -> CliResult<String> {
    let form_name = cfg.form.as_deref().ok_or_else(|| crate::error::CliError::Validation("missing --form".into()))?;
    let form = EvalForm::parse(form_name)?;
    let q = cfg.q()?;
    let terms: Vec<(String, f64)> = match form {
        EvalForm::AffineClosed => {
            if q.len() < 5 {
                return invalid(format!("affine-closed needs at least 5 coordinates, got {}", q.len()));
            }
            let q5 = q[4];
            let pre = 2.0 * PI * PI / (9.0 * q5 * q5);
            affine_potential_terms(&q)?
                .into_iter()
                .map(|(id, v)| Ok((id.to_string(), pre * cfg.coupling_for(id)? * v)))
                .collect::<CliResult<_>>()?
        }
        EvalForm::Partial(f) => {
            if q.len() != 7 {
                return invalid(format!("{form_name} needs 7 coordinates, got {}", q.len()));
            }
            vec![(f.name().to_string(), partial_sum_potential(&q, f, cfg.coupling_for(f.name())?)?)]
        }
    };
    let value: f64 = terms.iter().map(|t| t.1).sum();
    Ok(match fmt {
        Format::Json => render_json(&json!({
            "form": form_name,
            "q": q.iter().map(|x| json_f64(*x)).collect::<Vec<_>>(),
            "value": json_f64(value),
            "terms": terms.iter().map(|(id, v)| json!({ "id": id, "value": json_f64(*v) })).collect::<Vec<_>>(),
        })),
        Format::Tsv => {
            let mut t = Tsv::new(["id", "value"]);
            for (id, v) in &terms {
                t.push([id.clone(), fmt_g(*v)]);
            }
            t.footer(format!("value\t{}", fmt_g(value)));
            t.render()
        }
    })
}

fn diagram_report(cfg: &RunConfig, fmt: Format) -> CliResult<String> {
    let alg = Algebra::from(cfg)?;
    let rows = alg.cartan.to_i64_rows();
    Ok(match fmt {
        Format::Json => render_json(&json!({
            "n": alg.n,
            "m": alg.m,
            "labels": alg.diagram.labels(),
            "edges": alg.diagram.edges().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "cartan": rows,
        })),
        Format::Tsv => {
            let labels: Vec<String> = alg.cartan.labels().iter().map(ToString::to_string).collect();
            let mut t = Tsv::new(std::iter::once("label".to_string()).chain(labels.iter().cloned()));
            for (l, row) in labels.iter().zip(&rows) {
                t.push(std::iter::once(l.clone()).chain(row.iter().map(ToString::to_string)));
            }
            t.render()
        }
    })
}
