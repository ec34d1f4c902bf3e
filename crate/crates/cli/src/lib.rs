//! Reproducible experiments over `F_q(t)` with canonical JSON reports.

pub mod args;
pub mod encode;

use std::io::Write;

use ffdyn_core::arboreal::{degree_tower, finindex_conditions, stability_profile, zram_scan, UnicriticalMap};
use ffdyn_core::error::Error;
use ffdyn_core::funcfield::{Field, Frac, PolyQ, P1, DEFAULT_FACTOR_BUDGET};
use ffdyn_core::heights::{
    canonical_height, functoriality_constant, is_preperiodic, primitive_height, weil_height, DEFAULT_HEIGHT_BUDGET, DEFAULT_ORBIT_BUDGET,
};
use ffdyn_core::integrality::{orbit_integral_scan, PlaceSet};
use ffdyn_core::ratmap::{period_census, RatMap, DEFAULT_DEGREE_BUDGET};
use ffdyn_core::reduction::{
    bad_reduction_places, coefficient_places, cross_ratio, newton_polygon, noniso_set_witness, noniso_set_witness_at, reduction_type,
};
use ffdyn_core::superelliptic::{noniso_curve_verdict, ramified_sum, CurveVerdict, SuperellipticCurve};
use ffdyn_core::text::{format_place, parse_frac, parse_kpoly, parse_place, parse_point, parse_polyq};
use ffdyn_core::zsigmondy::{zsigmondy_scan, DEFAULT_ZSIG_BUDGET};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde_json::{json, Map, Value};

use crate::args::{ArborealCommand, Cli, Command, CurveCommand};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Io(s) => write!(f, "io: {s}"),
        }
    }
}

impl CliError {
    /// 2 parse, 3 budget, 4 hypothesis, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                Error::Parse { .. } | Error::InvalidField(_) | Error::InvalidPlace(_) => 2,
                Error::Budget { .. } => 3,
                Error::Precondition(_) | Error::BadReduction(_) | Error::NotIntegral(_) | Error::NoSpecialization(_) => 4,
                _ => 1,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "parse",
            3 => "budget",
            4 => "hypothesis",
            _ => "other",
        }
    }
}

type Res<T> = std::result::Result<T, CliError>;

/// A finished command: JSON fields merged into the report, plus an optional table.
pub struct Output {
    pub fields: Map<String, Value>,
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
}

pub fn build_field(cli: &Cli) -> Res<Field> {
    let p = cli.p.ok_or_else(|| CliError::Usage("--p is required".into()))?;
    let modulus = match &cli.modulus {
        None => None,
        Some(m) => {
            let fp = Field::prime(p)?;
            let poly = parse_polyq(&fp, &m.replace('g', "t"))?;
            Some(poly.coeffs().iter().map(|&c| fp.digits(c).first().copied().unwrap_or(0)).collect())
        }
    };
    Ok(Field::new(p, cli.e, modulus)?)
}

fn config(cli: &Cli, field: Option<&Field>) -> Value {
    json!({
        "p": cli.p,
        "e": cli.e,
        "modulus": field.filter(|f| f.degree() > 1).map(|f| f.modulus_string()).or_else(|| cli.modulus.clone()),
        "command": serde_json::to_value(&cli.command).expect("serializable"),
        "seed": cli.seed,
        "budget": cli.budget,
        "out": cli.out,
        "csv": cli.csv,
    })
}

/// Canonical JSON: sorted keys, two-space indentation, trailing newline.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Runs a parsed command line, returning the report text and exit code.
pub fn run(cli: &Cli) -> (String, i32, Option<String>) {
    let field = build_field(cli);
    let result = field.as_ref().map_err(|e| CliError::Usage(e.to_string())).and_then(|f| execute(cli, f));
    let mut report = Map::new();
    report.insert("config".into(), config(cli, field.as_ref().ok()));
    report.insert("version".into(), Value::String(VERSION.into()));
    report.insert("command".into(), Value::String(cli.command.name().into()));
    match result {
        Ok(out) => {
            for (k, v) in out.fields {
                report.insert(k, v);
            }
            let table = out.table.map(|(h, rows)| render_csv(&h, &rows));
            (canonical(&Value::Object(report)), 0, table)
        }
        Err(e) => {
            let code = match (&field, &e) {
                (Err(fe), _) => fe.exit_code(),
                _ => e.exit_code(),
            };
            let kind = match &field {
                Err(fe) => fe.kind(),
                Ok(_) => e.kind(),
            };
            report.insert("error".into(), json!({"kind": kind, "message": e.to_string(), "exit_code": code}));
            (canonical(&Value::Object(report)), code, None)
        }
    }
}

fn render_csv(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// Writes the report (and table) where the flags say; returns the exit code.
pub fn run_and_write(cli: &Cli) -> i32 {
    let (text, code, table) = run(cli);
    if code != 0 {
        if let Some(msg) = serde_json::from_str::<Value>(&text).ok().and_then(|v| v["error"]["message"].as_str().map(String::from)) {
            eprintln!("ffdyn: {msg}");
        }
    }
    let written = if cli.out == "-" {
        std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string())
    } else {
        std::fs::write(&cli.out, &text).map_err(|e| e.to_string())
    };
    if let Err(e) = written {
        eprintln!("ffdyn: cannot write {}: {e}", cli.out);
        return 1;
    }
    if let (Some(path), Some(t)) = (&cli.csv, table) {
        if let Err(e) = std::fs::write(path, t) {
            eprintln!("ffdyn: cannot write {path}: {e}");
            return 1;
        }
    }
    code
}

fn places_arg(field: &Field, ss: &[String]) -> Res<Vec<ffdyn_core::funcfield::Place>> {
    Ok(ss.iter().map(|s| parse_place(field, s)).collect::<Result<_, _>>()?)
}

fn finite(field: &Field, s: &str) -> Res<Frac> {
    Ok(parse_frac(field, s)?)
}

fn fields(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn random_point(field: &Field, rng: &mut ChaCha8Rng, max_deg: usize) -> P1 {
    let mut poly = |nonzero: bool| loop {
        let d = rng.next_u32() as usize % (max_deg + 1);
        let cs = (0..=d).map(|_| field.from_index(rng.next_u32() % field.order()).unwrap()).collect();
        let p = PolyQ::new(field, cs);
        if !nonzero || !p.is_zero() {
            return p;
        }
    };
    let num = poly(false);
    let den = poly(true);
    P1::Finite(Frac::new(num, den))
}

pub fn execute(cli: &Cli, field: &Field) -> Res<Output> {
    let deg_budget = cli.budget.unwrap_or(DEFAULT_DEGREE_BUDGET);
    let fac_budget = cli.budget.unwrap_or(DEFAULT_FACTOR_BUDGET);
    let mut table = None;
    let out = match &cli.command {
        Command::Orbit { map, alpha, n } => {
            let phi = RatMap::parse(field, map)?;
            let rec = phi.orbit(&parse_point(field, alpha)?, *n);
            fields(vec![
                ("map", Value::String(phi.to_string())),
                ("seed_point", encode::point(&rec.seed)),
                ("values", Value::Array(rec.values.iter().map(encode::point).collect())),
                ("heights", json!(rec.heights)),
            ])
        }
        Command::Heights { map, z, eps, samples, sample_degree } => {
            let phi = RatMap::parse(field, map)?;
            let eps = parse_rational(eps)?;
            let c = functoriality_constant(&phi)?;
            let budget = cli.budget.unwrap_or(DEFAULT_HEIGHT_BUDGET);
            let mut pts = Vec::new();
            for s in z {
                let p = parse_point(field, s)?;
                let h = canonical_height(&phi, &p, &eps, budget)?;
                pts.push(json!({
                    "z": encode::point(&p),
                    "weil": weil_height(&p),
                    "canonical": encode::height(&h),
                    "preperiodicity": encode::preperiodicity(&is_preperiodic(&phi, &p, DEFAULT_ORBIT_BUDGET)?),
                }));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let d = phi.degree() as i64;
            let mut worst = 0i64;
            for _ in 0..*samples {
                let p = random_point(field, &mut rng, *sample_degree);
                let gap = weil_height(&phi.evaluate(&p)) as i64 - d * weil_height(&p) as i64;
                worst = worst.max(gap.abs());
            }
            fields(vec![
                ("map", Value::String(phi.to_string())),
                ("functoriality_constant", json!(c)),
                ("primitive_height", json!(primitive_height(&phi))),
                ("points", Value::Array(pts)),
                ("audit", json!({"samples": samples, "max_gap": worst, "within_constant": worst <= c as i64})),
            ])
        }
        Command::Reduction { map, place, newton, cross } => {
            let phi = RatMap::parse(field, map)?;
            let bad = bad_reduction_places(&phi)?;
            let mut probe: PlaceSet = bad.clone();
            probe.extend(coefficient_places(&phi)?);
            probe.extend(places_arg(field, place)?);
            let np_poly = newton.as_ref().map(|s| parse_kpoly(field, s)).transpose()?;
            let quad = if cross.is_empty() {
                None
            } else if cross.len() == 4 {
                Some(cross.iter().map(|s| parse_point(field, s)).collect::<Result<Vec<_>, _>>()?)
            } else {
                return Err(CliError::Usage("--cross takes exactly four points".into()));
            };
            let mut rows = Vec::new();
            for pl in &probe {
                let mut v = encode::reduction(&reduction_type(&phi, pl));
                if let Some(g) = &np_poly {
                    v["newton"] = encode::newton(&newton_polygon(g, pl)?);
                }
                if let Some(q) = &quad {
                    let cr = cross_ratio(&q[0], &q[1], &q[2], &q[3], pl)?;
                    v["cross_ratio"] = json!({"comparison": cr.comparison, "log_ratio": cr.log_ratio});
                }
                rows.push(v);
            }
            let prof = phi.degree_profile();
            fields(vec![
                ("map", Value::String(phi.to_string())),
                ("degree", json!({"total": prof.total, "separable": prof.separable, "inseparable": prof.inseparable})),
                ("bad_places", encode::places(&bad)),
                ("places", Value::Array(rows)),
                ("critical_points", Value::Array(phi.critical_points()?.iter().map(encode::critical_point).collect())),
            ])
        }
        Command::Witness { map, beta, nmax, place, at } => {
            let phi = RatMap::parse(field, map)?;
            let beta = finite(field, beta)?;
            let pl = places_arg(field, place)?;
            let pl = (!pl.is_empty()).then_some(pl.as_slice());
            let rep = match at {
                Some(n) => noniso_set_witness_at(&phi, &beta, *n, pl, deg_budget)?,
                None => noniso_set_witness(&phi, &beta, *nmax, pl, deg_budget)?,
            };
            let revalidated = rep.witness.as_ref().map(|w| w.revalidate(deg_budget)).transpose()?;
            let mut m = encode::witness_report(&rep).as_object().cloned().unwrap();
            m.insert("revalidated".into(), json!(revalidated));
            m
        }
        Command::IntegralScan { map, alpha, beta, s, bound } => {
            let phi = RatMap::parse(field, map)?;
            let s: PlaceSet = places_arg(field, s)?.into_iter().collect();
            let rows = orbit_integral_scan(
                &phi,
                &parse_point(field, alpha)?,
                &parse_point(field, beta)?,
                &s,
                *bound,
                cli.budget.unwrap_or(DEFAULT_HEIGHT_BUDGET),
            )?;
            table = Some((
                vec!["n".into(), "height".into(), "integral".into(), "witness".into()],
                rows.iter()
                    .map(|r| vec![r.n.to_string(), r.height.to_string(), r.integral.to_string(), r.witness.as_ref().map(format_place).unwrap_or_default()])
                    .collect(),
            ));
            fields(vec![
                ("map", Value::String(phi.to_string())),
                ("s", encode::places(&s)),
                (
                    "rows",
                    Value::Array(
                        rows.iter()
                            .map(|r| json!({"n": r.n, "height": r.height, "integral": r.integral, "witness": r.witness.as_ref().map(encode::place)}))
                            .collect(),
                    ),
                ),
            ])
        }
        Command::Zsigmondy { map, alpha, beta, ell, bound } => {
            let phi = RatMap::parse(field, map)?;
            let rep = zsigmondy_scan(
                &phi,
                &finite(field, alpha)?,
                &finite(field, beta)?,
                ell,
                *bound,
                cli.budget.unwrap_or(DEFAULT_ZSIG_BUDGET),
            )?;
            let mut header: Vec<String> = ["n", "place", "v", "N_p", "primitive"].iter().map(|s| s.to_string()).collect();
            header.extend(ell.iter().map(|l| format!("primitive_{l}")));
            let mut rows = Vec::new();
            for e in &rep.entries {
                for f in &e.support {
                    let mut r = vec![e.n.to_string(), format_place(&f.place), f.valuation.to_string(), f.local_degree.to_string(), f.primitive.to_string()];
                    r.extend(f.primitive_ell.iter().map(|(_, b)| b.to_string()));
                    rows.push(r);
                }
            }
            table = Some((header, rows));
            encode::zsigmondy(&rep).as_object().cloned().unwrap()
        }
        Command::Curve(cc) => curve(field, cc, deg_budget)?,
        Command::Arboreal(ac) => arboreal(field, ac, deg_budget, fac_budget)?,
        Command::PeriodCensus { map, alpha, max_deg } => {
            let phi = RatMap::parse(field, map)?;
            let census = period_census(&phi, &finite(field, alpha)?, *max_deg);
            table = Some((
                vec!["place".into(), "tail".into(), "cycle".into(), "error".into()],
                census
                    .iter()
                    .map(|(pl, r)| match r {
                        Ok(p) => vec![format_place(pl), p.tail.to_string(), p.cycle.to_string(), String::new()],
                        Err(e) => vec![format_place(pl), String::new(), String::new(), e.clone()],
                    })
                    .collect(),
            ));
            fields(vec![
                ("map", Value::String(phi.to_string())),
                (
                    "census",
                    Value::Array(census.iter().map(|(pl, r)| json!({"place": encode::place(pl), "period": encode::period(r)})).collect()),
                ),
            ])
        }
    };
    Ok(Output { fields: out, table })
}

fn parse_rational(s: &str) -> Res<BigRational> {
    let bad = || CliError::Usage(format!("not a rational number: {s}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn make_curve(field: &Field, ell: u64, f: &str) -> Res<SuperellipticCurve> {
    Ok(SuperellipticCurve::new(ell, parse_kpoly(field, f)?)?)
}

fn curve(field: &Field, cc: &CurveCommand, budget: u64) -> Res<Map<String, Value>> {
    Ok(match cc {
        CurveCommand::Genus(a) => {
            let c = make_curve(field, a.ell, &a.f)?;
            fields(vec![
                ("genus", json!(c.genus())),
                ("degree", json!(c.degree())),
                ("uniqueness_bound", json!(c.uniqueness_bound_ok())),
                ("genus_lower_bound", json!(c.genus_lower_bound_ok())),
            ])
        }
        CurveCommand::Verdict { curve, map, beta, n, place } => {
            let c = make_curve(field, curve.ell, &curve.f)?;
            let phi = RatMap::parse(field, map)?;
            let pl = places_arg(field, place)?;
            let rep = noniso_set_witness_at(&phi, &finite(field, beta)?, *n, (!pl.is_empty()).then_some(pl.as_slice()), budget)?;
            let verdict = match noniso_curve_verdict(&c, &rep)? {
                CurveVerdict::NonIsotrivialCertified => json!({"status": "non_isotrivial_certified"}),
                CurveVerdict::Undetermined(why) => json!({"status": "undetermined", "reason": why}),
            };
            fields(vec![("genus", json!(c.genus())), ("verdict", verdict), ("witness", encode::witness_report(&rep))])
        }
        CurveCommand::RamifiedSum { curve, a, s } => {
            let c = make_curve(field, curve.ell, &curve.f)?;
            let s: PlaceSet = places_arg(field, s)?.into_iter().collect();
            let mut rows = Vec::new();
            for x in a {
                let r = ramified_sum(&c, &finite(field, x)?, &s)?;
                rows.push(json!({
                    "a": x,
                    "value": encode::frac(&r.value),
                    "places": r.places.iter().map(|(p, v)| json!({"place": encode::place(p), "v": v})).collect::<Vec<_>>(),
                    "sum": r.sum,
                    "weighted": r.weighted,
                    "height_a": r.height_a,
                    "height_value": r.height_value,
                }));
            }
            fields(vec![("genus", json!(c.genus())), ("s", encode::places(&s)), ("rows", Value::Array(rows))])
        }
    })
}

fn arboreal(field: &Field, ac: &ArborealCommand, deg_budget: u64, fac_budget: u64) -> Res<Map<String, Value>> {
    let uni = |m: &str| -> Res<UnicriticalMap> { Ok(UnicriticalMap::from_ratmap(&RatMap::parse(field, m)?)?) };
    Ok(match ac {
        ArborealCommand::Zram { map, beta, bound, ell } => {
            let f = uni(map)?;
            let rep = zram_scan(&f, &finite(field, beta)?, *bound, *ell, deg_budget)?;
            fields(vec![
                ("map", Value::String(f.to_ratmap().to_string())),
                ("critical_height", encode::bigrat(&f.critical_height())),
                ("zram", encode::zram(&rep)),
            ])
        }
        ArborealCommand::Tower { map, beta, bound } => {
            let f = uni(map)?;
            let beta = finite(field, beta)?;
            let rows = degree_tower(&f, &beta, *bound, fac_budget)?;
            let stab = stability_profile(&f, &beta, *bound, fac_budget).ok();
            fields(vec![
                ("map", Value::String(f.to_ratmap().to_string())),
                ("tower", encode::tower(&rows)),
                ("factor_counts", json!(stab)),
            ])
        }
        ArborealCommand::Finindex { map, gamma, n } => {
            let f = uni(map)?;
            let gs = gamma.iter().map(|g| finite(field, g)).collect::<Res<Vec<_>>>()?;
            fields(vec![
                ("map", Value::String(f.to_ratmap().to_string())),
                ("n", json!(n)),
                ("outcomes", encode::finindex(&finindex_conditions(&f, &gs, *n)?)),
            ])
        }
    })
}
