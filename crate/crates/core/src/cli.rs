//! Command-line surface: invariants, Hodge and Hurwitz tables, raw `𝖦_d` series
//! and verification suites, rendered as text, CSV or JSON.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Coefficient, FormalSeries, Mono, Truncation, MAX_VARS};
use crate::error::{Error, Result};
use crate::gw::{self, Insertion, InsertionClass, InsertionList};
use crate::hodge;
use crate::partitions::Partition;
use crate::verify::{commutator, dressing, equations, pluecker, Report};

#[derive(Parser, Debug)]
#[command(name = "wedge-gw", version, about = "Exact Gromov-Witten, Hodge and Hurwitz computations through the infinite wedge")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Connected and disconnected descendent brackets of P1 in degrees up to --qmax.
    Invariant(InvariantArgs),
    /// Linear Hodge integrals H_g(mu), operator route against the character route.
    Hodge(PartitionArgs),
    /// Hurwitz numbers C_g(mu), character route against brute-force enumeration.
    Hurwitz(PartitionArgs),
    /// The raw series G_d(z, w, u).
    Gfun(GfunArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value_t = 2)]
    pub qmax: u32,
    #[arg(long, default_value_t = -8, allow_negative_numbers = true)]
    pub ulo: i32,
    #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
    pub uhi: i32,
    #[arg(long, default_value_t = 3)]
    pub zorder: i32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for independent suite items.
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Both,
    Connected,
    Disconnected,
}

#[derive(Args, Debug)]
pub struct InvariantArgs {
    #[command(flatten)]
    pub common: Common,
    /// Descendent indices k of tau_k(0); with --y-basis, of tau_k(1).
    #[arg(long, num_args = 1..)]
    pub zero: Vec<u32>,
    /// Descendent indices l of tau_l(inf); with --y-basis, of tau_l(h).
    #[arg(long = "inf", num_args = 1..)]
    pub infinity: Vec<u32>,
    /// Read insertions in the (1, h) basis and also print the brackets
    /// completed by one primary insertion of each basis class.
    #[arg(long)]
    pub y_basis: bool,
    #[arg(long, value_enum, default_value_t = Kind::Both)]
    pub kind: Kind,
}

#[derive(Args, Debug)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub common: Common,
    /// Ramification profile, e.g. `3`, `2,1` or `(2,1)`.
    #[arg(long, num_args = 1.., required = true)]
    pub mu: Vec<String>,
    /// Only this genus; otherwise every genus whose u-exponent 2g-2 lies in the window.
    #[arg(long)]
    pub genus: Option<i64>,
}

#[derive(Args, Debug)]
pub struct GfunArgs {
    #[command(flatten)]
    pub common: Common,
    /// Number of z variables (insertions at 0).
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Number of w variables (insertions at infinity).
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Only this degree; otherwise every degree up to --qmax.
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, value_enum, default_value_t = Route::Operator)]
    pub route: Route,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Operator,
    Localization,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Commutators,
    Toda,
    DivisorString,
    Pluecker,
    Dressing,
    Routes,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub common: Common,
    /// Largest mode index: commutators use k, l in [-2, kmax]; dressing uses k <= kmax.
    #[arg(long)]
    pub kmax: Option<u32>,
    /// Total insertion degree kept in the Toda tau polynomials.
    #[arg(long, default_value_t = 2)]
    pub budget: u32,
    /// Largest degree for routes and divisor/string.
    #[arg(long)]
    pub d: Option<u32>,
    /// Energy cap of the commutator and translation checks.
    #[arg(long, default_value_t = 4)]
    pub energy_cap: u32,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TruncationInfo {
    pub q_max: u32,
    pub u_lo: i32,
    pub u_hi: i32,
    pub z_order: i32,
    pub energy_cap: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub keys: BTreeMap<String, String>,
    pub value: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub command: String,
    pub truncation: TruncationInfo,
    pub rows: Vec<Row>,
}

/// A table plus whether every identity in it held.
struct Table {
    output: Output,
    /// Column order for text and CSV.
    columns: Vec<String>,
    ok: bool,
}

impl Table {
    fn new(command: &str, common: &Common) -> Self {
        Table {
            output: Output {
                command: command.to_string(),
                truncation: TruncationInfo {
                    q_max: common.qmax,
                    u_lo: common.ulo,
                    u_hi: common.uhi,
                    z_order: common.zorder,
                    energy_cap: "auto".into(),
                },
                rows: Vec::new(),
            },
            columns: Vec::new(),
            ok: true,
        }
    }

    fn push(&mut self, keys: &[(&str, String)], value: String) {
        for (k, _) in keys {
            if !self.columns.iter().any(|c| c == k) {
                self.columns.push(k.to_string());
            }
        }
        self.output.rows.push(Row {
            keys: keys.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            value,
        });
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::IncompatibleVariables(..)
        | Error::InvalidTruncation(_)
        | Error::InvalidPartition(_)
        | Error::InvalidArgument(_)
        | Error::BoundsExceeded(_)
        | Error::EnergyCapExceeded(..)
        | Error::WindowTooSmall(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name), writes the result to `out` and
/// diagnostics to `err`, and returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let common = match &cli.command {
        Command::Invariant(a) => &a.common,
        Command::Hodge(a) | Command::Hurwitz(a) => &a.common,
        Command::Gfun(a) => &a.common,
        Command::Verify(a) => &a.common,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(common.parallel.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let result = pool.install(|| match &cli.command {
        Command::Invariant(a) => cmd_invariant(a),
        Command::Hodge(a) => cmd_hodge(a),
        Command::Hurwitz(a) => cmd_hurwitz(a),
        Command::Gfun(a) => cmd_gfun(a),
        Command::Verify(a) => cmd_verify(a),
    });
    match result {
        Ok(table) => {
            if let Err(e) = render(&table, common.format, out) {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
            if table.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn render(table: &Table, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    let o = &table.output;
    match format {
        Format::Json => {
            let s = serde_json::to_string_pretty(o).map_err(std::io::Error::other)?;
            writeln!(out, "{s}")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = table.columns.clone();
            header.push("value".into());
            w.write_record(&header).map_err(std::io::Error::other)?;
            for row in &o.rows {
                let mut rec: Vec<&str> = table
                    .columns
                    .iter()
                    .map(|c| row.keys.get(c).map(String::as_str).unwrap_or(""))
                    .collect();
                rec.push(&row.value);
                w.write_record(&rec).map_err(std::io::Error::other)?;
            }
            w.flush()
        }
        Format::Text => {
            let t = &o.truncation;
            writeln!(
                out,
                "# {}  q_max={} u=[{},{}] z_order={} energy_cap={}",
                o.command, t.q_max, t.u_lo, t.u_hi, t.z_order, t.energy_cap
            )?;
            if o.rows.is_empty() {
                writeln!(out, "(no nonzero rows)")?;
            }
            for row in &o.rows {
                let keys: Vec<String> = table
                    .columns
                    .iter()
                    .filter_map(|c| row.keys.get(c).map(|v| format!("{c}={v}")))
                    .collect();
                writeln!(out, "{}  {}", keys.join(" "), row.value)?;
            }
            if o.command == "verify" {
                let failed = o.rows.iter().filter(|r| r.keys.get("status").is_some_and(|s| s != "pass")).count();
                writeln!(out, "# {} checks, {} failed", o.rows.len(), failed)?;
            }
            Ok(())
        }
    }
}

fn window(common: &Common, vars: &[(String, i32)]) -> Result<Arc<Truncation>> {
    let refs: Vec<(&str, i32)> = vars.iter().map(|(s, o)| (s.as_str(), *o)).collect();
    Ok(Truncation::new(common.qmax, common.ulo, common.uhi, &refs)?.shared())
}

fn point_vars(n: usize, m: usize, order: i32) -> Result<Vec<(String, i32)>> {
    if n + m > MAX_VARS {
        return Err(Error::InvalidArgument(format!("at most {MAX_VARS} variables, got {}", n + m)));
    }
    let mut v: Vec<(String, i32)> = (1..=n).map(|i| (format!("z{i}"), order)).collect();
    v.extend((1..=m).map(|j| (format!("w{j}"), order)));
    Ok(v)
}

fn genus_of(u: i32) -> Result<i64> {
    if u % 2 != 0 {
        return Err(Error::NonPolynomial(format!("odd u-exponent {u}")));
    }
    Ok(u as i64 / 2 + 1)
}

fn describe(items: &[Insertion]) -> String {
    let parts: Vec<String> = items
        .iter()
        .map(|&(c, k)| {
            let class = match c {
                InsertionClass::Zero => "0",
                InsertionClass::Infinity => "inf",
                InsertionClass::Unit => "1",
                InsertionClass::Hyperplane => "h",
            };
            format!("tau{k}({class})")
        })
        .collect();
    if parts.is_empty() {
        "()".into()
    } else {
        parts.join(" ")
    }
}

fn disconnected_mixed(items: &[Insertion], trunc: &Arc<Truncation>) -> Result<FormalSeries> {
    let mut acc = FormalSeries::zero(trunc);
    for (c, list) in gw::to_fixed_point_basis(items) {
        let mut ins = InsertionList::default();
        for (class, k) in list {
            match class {
                InsertionClass::Zero => ins.zero.push(k),
                _ => ins.infinity.push(k),
            }
        }
        acc = acc.try_add(&gw::bracket_disconnected(&ins, trunc)?.scale(&c))?;
    }
    Ok(acc)
}

fn cmd_invariant(a: &InvariantArgs) -> Result<Table> {
    let trunc = window(&a.common, &[])?;
    let (zero_class, inf_class) = if a.y_basis {
        (InsertionClass::Unit, InsertionClass::Hyperplane)
    } else {
        (InsertionClass::Zero, InsertionClass::Infinity)
    };
    let base: Vec<Insertion> = a
        .zero
        .iter()
        .map(|&k| (zero_class, k))
        .chain(a.infinity.iter().map(|&l| (inf_class, l)))
        .collect();
    let mut lists = vec![base.clone()];
    if a.y_basis {
        for class in [InsertionClass::Unit, InsertionClass::Hyperplane] {
            let mut l = base.clone();
            l.push((class, 0));
            lists.push(l);
        }
    }
    let mut table = Table::new("invariant", &a.common);
    for items in &lists {
        let label = describe(items);
        let mut kinds = Vec::new();
        if a.kind != Kind::Disconnected {
            kinds.push(("connected", gw::bracket_connected_mixed(items, &trunc)?));
        }
        if a.kind != Kind::Connected {
            kinds.push(("disconnected", disconnected_mixed(items, &trunc)?));
        }
        for (kind, series) in kinds {
            for (m, c) in series.iter() {
                table.push(
                    &[
                        ("insertions", label.clone()),
                        ("kind", kind.into()),
                        ("d", m.q.to_string()),
                        ("g", genus_of(m.u)?.to_string()),
                        ("u", m.u.to_string()),
                    ],
                    c.render(),
                );
            }
        }
    }
    Ok(table)
}

fn parse_mu(raw: &[String]) -> Result<Partition> {
    let mu: Partition = raw.join(" ").parse()?;
    if mu.size() == 0 {
        return Err(Error::InvalidPartition("empty partition".into()));
    }
    Ok(mu)
}

fn genera(a: &PartitionArgs) -> Result<Vec<i64>> {
    match a.genus {
        Some(g) if g < 0 => Err(Error::InvalidArgument(format!("negative genus {g}"))),
        Some(g) => Ok(vec![g]),
        None => {
            let lo = (a.common.ulo + 2).max(0);
            let hi = a.common.uhi + 2;
            Ok((lo..=hi).filter(|e| e % 2 == 0).map(|e| e as i64 / 2).collect())
        }
    }
}

fn rational(x: &BigRational) -> String {
    Coefficient::from_rational(x.clone()).render()
}

fn cmd_hodge(a: &PartitionArgs) -> Result<Table> {
    let mu = parse_mu(&a.mu)?;
    let mut table = Table::new("hodge", &a.common);
    for g in genera(a)? {
        let e = (2 * g - 2) as i32;
        let trunc = Truncation::new(a.common.qmax, e, e, &[])?.shared();
        let operator = hodge::hodge_at_integers(&mu, &trunc)?.coeff(&Mono::u(e));
        let character = Coefficient::from_rational(hodge::elsv_hodge(g, &mu)?);
        let agree = operator == character;
        table.ok &= agree;
        table.push(
            &[
                ("mu", mu.to_string()),
                ("g", g.to_string()),
                ("character", character.render()),
                ("match", if agree { "yes".into() } else { "no".into() }),
            ],
            operator.render(),
        );
    }
    Ok(table)
}

fn cmd_hurwitz(a: &PartitionArgs) -> Result<Table> {
    let mu = parse_mu(&a.mu)?;
    let mut table = Table::new("hurwitz", &a.common);
    for g in genera(a)? {
        let character = hodge::hurwitz_character(g, &mu)?;
        let (oracle, agree) = match hodge::hurwitz_oracle(g, &mu) {
            Ok(x) => {
                let same = x == character;
                (rational(&x), if same { "yes" } else { "no" })
            }
            Err(Error::BoundsExceeded(_)) => ("n/a".to_string(), "n/a"),
            Err(e) => return Err(e),
        };
        table.ok &= agree != "no";
        table.push(
            &[
                ("mu", mu.to_string()),
                ("g", g.to_string()),
                ("enumeration", oracle),
                ("match", agree.into()),
            ],
            rational(&character),
        );
    }
    Ok(table)
}

fn cmd_gfun(a: &GfunArgs) -> Result<Table> {
    let vars = point_vars(a.n, a.m, a.common.zorder)?;
    let trunc = window(&a.common, &vars)?;
    let degrees: Vec<u32> = match a.d {
        Some(d) => vec![d],
        None => (0..=a.common.qmax).collect(),
    };
    let mut table = Table::new("gfun", &a.common);
    for d in degrees {
        let series = match a.route {
            Route::Operator => gw::g_operator(&trunc, a.n, a.m, Some(d))?,
            Route::Localization => gw::g_localization(&trunc, a.n, a.m, d)?,
        };
        table.push(
            &[
                ("d", d.to_string()),
                ("n", a.n.to_string()),
                ("m", a.m.to_string()),
            ],
            series.render(),
        );
    }
    Ok(table)
}

type Job = Box<dyn Fn() -> Result<Report> + Send + Sync>;

fn suite_jobs(suite: Suite, a: &VerifyArgs) -> Result<Vec<(&'static str, Job)>> {
    let c = a.common.clone();
    let bare = window(&c, &[])?;
    let mut jobs: Vec<(&'static str, Job)> = Vec::new();
    match suite {
        Suite::Commutators => {
            let k_hi = a.kmax.unwrap_or(3) as i32;
            let cap = a.energy_cap;
            jobs.push(("commutators", Box::new(move || commutator::check_commutators(-2, k_hi, cap))));
        }
        Suite::Toda => {
            let budget = a.budget;
            let t = bare.clone();
            jobs.push((
                "toda",
                Box::new(move || {
                    let data = equations::toda_data(2, budget, &t)?;
                    let mut r = equations::check_toda_equation(&data, &t)?;
                    r.extend(equations::check_genus_zero(&data, &t)?);
                    Ok(r)
                }),
            ));
        }
        Suite::DivisorString => {
            let d_max = a.d.unwrap_or(2);
            for d in 0..=d_max {
                for (n, m) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
                    let t = window(&c, &point_vars(n, m, c.zorder)?)?;
                    jobs.push(("divisor-string", Box::new(move || equations::check_divisor(d, n, m, &t))));
                }
                for ins in string_cases() {
                    let t = bare.clone();
                    jobs.push(("divisor-string", Box::new(move || equations::check_string(&ins, d, &t))));
                }
            }
        }
        Suite::Pluecker => {
            let t = bare.clone();
            jobs.push((
                "pluecker",
                Box::new(move || pluecker::check_pluecker(&pluecker::default_samples(), 3, &t)),
            ));
            let t = bare.clone();
            jobs.push((
                "pluecker",
                Box::new(move || pluecker::check_translated_expectation(&pluecker::default_samples(), 3, &t)),
            ));
            let cap = a.energy_cap.min(3);
            jobs.push(("pluecker", Box::new(move || pluecker::check_energy_translation(cap))));
            let t = bare.clone();
            let order = c.zorder;
            jobs.push(("pluecker", Box::new(move || pluecker::check_family_translation(cap, order, &t))));
        }
        Suite::Dressing => {
            let k_max = a.kmax.unwrap_or(4);
            jobs.push(("dressing", Box::new(move || dressing::check_dressing_coefficients(k_max))));
            jobs.push(("dressing", Box::new(move || dressing::check_matrix_identity(k_max, 8 + k_max as i64, 8))));
            jobs.push(("dressing", Box::new(|| dressing::check_small_u_limit(-4..=4, 4))));
        }
        Suite::Routes => {
            let d_max = a.d.unwrap_or(2);
            for d in 0..=d_max {
                for (n, m) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
                    let t = window(&c, &point_vars(n, m, c.zorder)?)?;
                    jobs.push((
                        "routes",
                        Box::new(move || {
                            let mut r = Report::new();
                            let op = gw::g_operator(&t, n, m, Some(d))?;
                            let loc = gw::g_localization(&t, n, m, d)?;
                            r.compare("route-equality", format!("d={d} n={n} m={m}"), &op, &loc);
                            Ok(r)
                        }),
                    ));
                }
            }
        }
        Suite::All => {
            for s in [
                Suite::Commutators,
                Suite::Toda,
                Suite::DivisorString,
                Suite::Pluecker,
                Suite::Dressing,
                Suite::Routes,
            ] {
                jobs.extend(suite_jobs(s, a)?);
            }
        }
    }
    Ok(jobs)
}

fn string_cases() -> Vec<InsertionList> {
    vec![
        InsertionList::new(vec![], vec![]),
        InsertionList::new(vec![1], vec![]),
        InsertionList::new(vec![], vec![2]),
        InsertionList::new(vec![1], vec![1]),
        InsertionList::new(vec![2], vec![0]),
    ]
}

fn cmd_verify(a: &VerifyArgs) -> Result<Table> {
    let jobs = suite_jobs(a.suite, a)?;
    let reports: Vec<Result<Report>> = jobs.par_iter().map(|(_, job)| job()).collect();
    let mut table = Table::new("verify", &a.common);
    for ((suite, _), report) in jobs.iter().zip(reports) {
        for row in report?.rows {
            table.ok &= row.pass;
            let mut keys = vec![
                ("suite", suite.to_string()),
                ("identity", row.identity),
                ("location", row.location),
                ("status", if row.pass { "pass".into() } else { "FAIL".into() }),
            ];
            if !row.pass {
                keys.push(("expected", row.expected));
            }
            table.push(&keys, row.actual);
        }
    }
    Ok(table)
}
