//! Command-line front end: one subcommand per verification suite, each
//! writing a CSV report. Exit status 0 on success, 2 on invalid input or a
//! failed check, 3 on bad or missing data, 4 on an accuracy failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{usage, Error, Result};
use crate::fetch::{fetch_zero_table, sha256_file};
use crate::kernels::{ibp_identity_residual, IbpLemma};
use crate::moments::{fujii_rhs, lemma_21_22_check, theorem1_ci_form, verify_theorem1, MomentOptions, MomentReport};
use crate::paircorr::{
    f_model, f_scaled_grid, fejer_block, scale, tail_integrals, AlphaGrid, PairMode, PairSumConfig, DEFAULT_SUB_BLOCK,
};
use crate::primes::{build_lambda, tpc_ratio, LambdaTable, MAX_TABLE_LIMIT};
use crate::sum::with_workers;
use crate::zerodata::{load_zeros, s_of_t, ZeroSet};

#[derive(Debug, Parser)]
#[command(name = "zeta-shift", version, about = "Second moment of S(t+h) - S(t): verification suites")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairModeArg {
    Exact,
    Windowed,
}

/// Flags shared by every subcommand; each overrides the config file.
#[derive(Debug, Default, Args)]
pub struct CommonArgs {
    /// Flat `key = value` file with defaults for the flags below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub zeros: Option<PathBuf>,
    #[arg(long = "t-cap", global = true)]
    pub t_cap: Option<f64>,
    /// Height T for the moment suites; default t_max − h rounded down.
    #[arg(long, global = true)]
    pub height: Option<f64>,
    /// Comma-separated shifts.
    #[arg(long = "h", global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub h: Option<Vec<f64>>,
    #[arg(long = "pair-mode", global = true)]
    pub pair_mode: Option<PairModeArg>,
    #[arg(long, global = true)]
    pub window: Option<f64>,
    #[arg(long = "prime-limit", global = true)]
    pub prime_limit: Option<u64>,
    #[arg(long = "a-max", global = true)]
    pub a_max: Option<f64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basic statistics of the zero table.
    ZerosStat,
    /// ∫(S(t+h) − S(t))² against the theorem's total and Fujii's baseline.
    Moment,
    /// F(α), F_h(α) and the main-term model along an α grid.
    Paircorr {
        #[arg(long, default_value_t = 0.0)]
        alpha_start: f64,
        #[arg(long, default_value_t = 0.05)]
        alpha_step: f64,
        #[arg(long, default_value_t = 61)]
        alpha_count: usize,
    },
    /// Full term-by-term breakdown, both forms.
    Theorem1 {
        /// Prime cut for the Ci form; default √(T/2π).
        #[arg(long)]
        x: Option<f64>,
    },
    /// ∫₁^∞ (F − F_h)/α^p for p = 2, 4 against the stated bounds.
    Theorem2,
    /// Residuals of the exact identities.
    Lemmas,
    /// Σ Λ(n)Λ(n+d) / (𝔖(d) N).
    Tpc {
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![2i64, 4, 6])]
        d: Vec<i64>,
    },
    /// Download a zero table, refusing it unless the SHA-256 matches.
    Fetch {
        #[arg(long)]
        url: String,
        #[arg(long)]
        sha256: String,
        #[arg(long, default_value = "data")]
        dest: PathBuf,
        #[arg(long, default_value = "zeros.txt")]
        name: String,
    },
}

/// Flags and config file merged and checked.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub zeros_path: Option<PathBuf>,
    pub t_cap: Option<f64>,
    pub height: Option<f64>,
    pub h_list: Vec<f64>,
    pub pair: PairSumConfig,
    pub prime_limit: u64,
    pub a_max: f64,
    pub out_dir: PathBuf,
    /// 0: rayon's default
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            zeros_path: None,
            t_cap: None,
            height: None,
            h_list: vec![0.5, 1.0],
            pair: PairSumConfig::windowed(50.0),
            prime_limit: 10_000_000,
            a_max: 10.0,
            out_dir: PathBuf::from("."),
            workers: 0,
        }
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected key = value, got {raw:?}", i + 1)))?;
        let key = k.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(usage(format!("config line {}: unknown key {:?}", i + 1, k.trim())));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

const KEYS: [&str; 10] = ["zeros", "t_cap", "height", "h", "pair_mode", "window", "prime_limit", "a_max", "out", "workers"];

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| usage(format!("{key}: cannot parse {v:?}")))
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self> {
        let file = match &args.config {
            Some(p) => parse_config_file(&fs::read_to_string(p)?)?,
            None => BTreeMap::new(),
        };
        let get = |k: &str| file.get(k).map(String::as_str);
        let mut cfg = RunConfig::default();
        cfg.zeros_path = args.zeros.clone().or_else(|| get("zeros").map(PathBuf::from));
        cfg.t_cap = match args.t_cap {
            Some(v) => Some(v),
            None => get("t_cap").map(|v| parse_num("t_cap", v)).transpose()?,
        };
        cfg.height = match args.height {
            Some(v) => Some(v),
            None => get("height").map(|v| parse_num("height", v)).transpose()?,
        };
        if let Some(h) = &args.h {
            cfg.h_list = h.clone();
        } else if let Some(v) = get("h") {
            cfg.h_list = v.split(',').map(|s| parse_num("h", s.trim())).collect::<Result<_>>()?;
        }
        let mode = match (args.pair_mode, get("pair_mode")) {
            (Some(m), _) => m,
            (None, Some("exact")) => PairModeArg::Exact,
            (None, Some("windowed")) | (None, None) => PairModeArg::Windowed,
            (None, Some(v)) => return Err(usage(format!("pair_mode must be exact or windowed, got {v:?}"))),
        };
        let window = match args.window {
            Some(w) => w,
            None => get("window").map(|v| parse_num("window", v)).transpose()?.unwrap_or(50.0),
        };
        cfg.pair = match mode {
            PairModeArg::Exact => PairSumConfig::exact(),
            PairModeArg::Windowed => PairSumConfig::windowed(window),
        };
        if let Some(v) = args.prime_limit {
            cfg.prime_limit = v;
        } else if let Some(v) = get("prime_limit") {
            cfg.prime_limit = parse_num("prime_limit", v)?;
        }
        if let Some(v) = args.a_max {
            cfg.a_max = v;
        } else if let Some(v) = get("a_max") {
            cfg.a_max = parse_num("a_max", v)?;
        }
        cfg.out_dir = args.out.clone().or_else(|| get("out").map(PathBuf::from)).unwrap_or(cfg.out_dir);
        if let Some(v) = args.workers {
            cfg.workers = v;
        } else if let Some(v) = get("workers") {
            cfg.workers = parse_num("workers", v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.h_list.is_empty() {
            return Err(usage("need at least one shift h"));
        }
        for &h in &self.h_list {
            if !(h >= 0.0 && h.is_finite()) {
                return Err(usage(format!("shifts must be finite and non-negative, got {h}")));
            }
            self.pair.check(h)?;
        }
        if let Some(t) = self.t_cap {
            if !(t > 0.0) {
                return Err(usage(format!("t_cap must be positive, got {t}")));
            }
        }
        if !(1_000..=MAX_TABLE_LIMIT).contains(&self.prime_limit) {
            return Err(usage(format!("prime_limit must lie in [1000, {MAX_TABLE_LIMIT}], got {}", self.prime_limit)));
        }
        if !(self.a_max >= 2.0 && self.a_max <= 1e4) {
            return Err(usage(format!("a_max must lie in [2, 1e4], got {}", self.a_max)));
        }
        Ok(())
    }

    /// Settings that can change a result, as one CSV-safe field.
    pub fn echo(&self) -> String {
        let h: Vec<String> = self.h_list.iter().map(|h| h.to_string()).collect();
        let mode = match self.pair.mode {
            PairMode::Exact => "exact".to_string(),
            PairMode::Windowed(w) => format!("windowed:{w}"),
        };
        let t_cap = self.t_cap.map_or("none".to_string(), |t| t.to_string());
        let height = self.height.map_or("auto".to_string(), |t| t.to_string());
        format!("t_cap={t_cap};height={height};h={};pair_mode={mode};prime_limit={};a_max={}", h.join("|"), self.prime_limit, self.a_max)
    }

    fn moment_options(&self) -> MomentOptions {
        MomentOptions { pair: self.pair, a_max: self.a_max, t: self.height, ..Default::default() }
    }
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Domain(_) | Error::Resource(_) => 2,
        Error::Format { .. }
        | Error::DataIntegrity(_)
        | Error::Coverage { .. }
        | Error::Checksum { .. }
        | Error::Download(_)
        | Error::Io(_) => 3,
        Error::Accuracy { .. } => 4,
    }
}

/// Round-trip formatting (17 significant digits).
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

struct Csv {
    text: String,
}

impl Csv {
    fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push_str(",zeros_sha256,config\n");
        Self { text }
    }

    fn row(&mut self, fields: &[String], digest: &str, echo: &str) {
        self.text.push_str(&fields.join(","));
        let _ = writeln!(self.text, ",{digest},{echo}");
    }

    fn write(&self, dir: &Path, name: &str) -> Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = dir.join(name);
        let tmp = dir.join(format!(".{name}.tmp"));
        fs::write(&tmp, &self.text)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

/// What a suite did: its report path and whether every check passed.
pub struct Outcome {
    pub report: Option<PathBuf>,
    pub passed: bool,
}

struct Loaded {
    zs: ZeroSet,
    digest: String,
}

fn load(cfg: &RunConfig) -> Result<Loaded> {
    let path = cfg.zeros_path.as_ref().ok_or_else(|| usage("this command needs --zeros PATH"))?;
    Ok(Loaded { zs: load_zeros(path, cfg.t_cap)?, digest: sha256_file(path)? })
}

fn digest_or_none(cfg: &RunConfig) -> Result<String> {
    cfg.zeros_path.as_ref().map_or(Ok("none".to_string()), sha256_file)
}

fn prime_table(cfg: &RunConfig) -> Result<LambdaTable> {
    build_lambda(cfg.prime_limit)
}

/// Runs one subcommand with a resolved configuration.
pub fn run(command: &Command, cfg: &RunConfig) -> Result<Outcome> {
    with_workers(cfg.workers, || dispatch(command, cfg))
}

fn dispatch(command: &Command, cfg: &RunConfig) -> Result<Outcome> {
    let echo = cfg.echo();
    let dir = &cfg.out_dir;
    match command {
        Command::ZerosStat => {
            let Loaded { zs, digest } = load(cfg)?;
            let g = zs.gammas();
            let n = g.len();
            let mut min_gap = f64::INFINITY;
            let mut unfolded = 0.0;
            let mut max_s = 0.0f64;
            for i in 1..n {
                let gap = g[i] - g[i - 1];
                min_gap = min_gap.min(gap);
                let mid = 0.5 * (g[i] + g[i - 1]);
                unfolded += gap * (mid / (2.0 * std::f64::consts::PI)).ln() / (2.0 * std::f64::consts::PI);
                if mid >= crate::zerodata::THETA_MIN {
                    max_s = max_s.max(s_of_t(&zs, mid)?.abs());
                }
            }
            let mut csv = Csv::new(&["count", "t_max", "first", "last", "min_gap", "mean_unfolded_gap", "s_at_t_max", "max_abs_s_midpoints"]);
            csv.row(
                &[
                    n.to_string(),
                    num(zs.t_max()),
                    num(g.first().copied().unwrap_or(f64::NAN)),
                    num(g.last().copied().unwrap_or(f64::NAN)),
                    num(min_gap),
                    num(unfolded / (n.max(2) - 1) as f64),
                    num(s_of_t(&zs, zs.t_max())?),
                    num(max_s),
                ],
                &digest,
                &echo,
            );
            Ok(Outcome { report: Some(csv.write(dir, "zeros_stat.csv")?), passed: true })
        }
        Command::Moment => {
            let Loaded { zs, digest } = load(cfg)?;
            let table = prime_table(cfg)?;
            let opts = cfg.moment_options();
            let mut csv = Csv::new(&["h", "T", "L", "lhs", "rhs", "residual", "residual_norm", "fujii_rhs"]);
            for &h in &cfg.h_list {
                let r = verify_theorem1(&zs, h, &table, &opts)?;
                let fujii = fujii_rhs(&zs.truncated(r.t)?, h, &cfg.pair)?;
                csv.row(
                    &[
                        num(h),
                        num(r.t),
                        num(r.big_l),
                        num(r.lhs.unwrap_or(f64::NAN)),
                        num(r.rhs_total),
                        num(r.residual.unwrap_or(f64::NAN)),
                        num(r.residual_norm.unwrap_or(f64::NAN)),
                        num(fujii.value),
                    ],
                    &digest,
                    &echo,
                );
            }
            Ok(Outcome { report: Some(csv.write(dir, "moment.csv")?), passed: true })
        }
        Command::Paircorr { alpha_start, alpha_step, alpha_count } => {
            let Loaded { zs, digest } = load(cfg)?;
            if !(*alpha_start >= 0.0 && *alpha_step > 0.0 && *alpha_count > 0) {
                return Err(usage("alpha grid needs start >= 0, step > 0, count > 0"));
            }
            let grid = AlphaGrid { start: *alpha_start, step: *alpha_step, count: *alpha_count };
            let mut shifts = vec![0.0];
            shifts.extend(cfg.h_list.iter().copied().filter(|&h| h != 0.0));
            let res = f_scaled_grid(&zs, &grid, &shifts, &cfg.pair)?;
            let (big_l, _) = scale(&zs)?;
            let t = zs.t_max();
            let mut csv = Csv::new(&["alpha", "h", "F", "F_h", "model", "regime", "truncation_bound"]);
            for &h in &cfg.h_list {
                let k = shifts.iter().position(|&s| s == h).unwrap_or(0);
                for (m, &a) in res.alphas.iter().enumerate() {
                    let f = res.values[0][m];
                    let (model, regime) = if a <= 1.0 {
                        let mv = f_model(a, h, t)?;
                        (mv.value, mv.regime.label())
                    } else {
                        (f * 4.0 * (h * big_l * a).cos() / (4.0 + h * h), "conjecture")
                    };
                    csv.row(
                        &[num(a), num(h), num(f), num(res.values[k][m]), num(model), regime.to_string(), num(res.bounds[k])],
                        &digest,
                        &echo,
                    );
                }
            }
            Ok(Outcome { report: Some(csv.write(dir, "paircorr.csv")?), passed: true })
        }
        Command::Theorem1 { x } => {
            let Loaded { zs, digest } = load(cfg)?;
            let table = prime_table(cfg)?;
            let opts = cfg.moment_options();
            let meta_cols = [
                "t2_lo",
                "t2_hi",
                "t9_lo",
                "t9_hi",
                "t2_beyond_a_max",
                "t9_beyond_a_max",
                "window_bound",
                "prime_tail_bound",
                "truncation_bound",
                "sliver_bound",
                "error_order",
            ];
            let mut header = vec!["h", "T", "L", "lhs"];
            header.extend(["T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "T9"]);
            header.extend(["rhs", "residual", "residual_norm"]);
            header.extend(meta_cols);
            header.extend(["ci_rhs", "ci_form_gap", "ci_form_gap_bound", "ci_agreement"]);
            let mut csv = Csv::new(&header);
            for &h in &cfg.h_list {
                let r = verify_theorem1(&zs, h, &table, &opts)?;
                let ci = theorem1_ci_form(&zs, h, *x, &table, &opts)?;
                let mut row = vec![num(h), num(r.t), num(r.big_l), num(r.lhs.unwrap_or(f64::NAN))];
                row.extend(r.terms.iter().map(|t| num(t.value)));
                row.extend([num(r.rhs_total), num(r.residual.unwrap_or(f64::NAN)), num(r.residual_norm.unwrap_or(f64::NAN))]);
                row.extend(meta_cols.iter().map(|k| num(r.meta(k).unwrap_or(0.0))));
                let gap = ci.meta("form_gap").unwrap_or(0.0);
                row.extend([
                    num(ci.rhs_total),
                    num(gap),
                    num(ci.meta("form_gap_bound").unwrap_or(0.0)),
                    num(ci_agreement(&r, &ci)),
                ]);
                csv.row(&row, &digest, &echo);
            }
            Ok(Outcome { report: Some(csv.write(dir, "theorem1.csv")?), passed: true })
        }
        Command::Theorem2 => {
            let Loaded { zs, digest } = load(cfg)?;
            let res = tail_integrals(&zs, &cfg.h_list, &[2, 4], cfg.a_max, DEFAULT_SUB_BLOCK, &cfg.pair)?;
            let mut csv = Csv::new(&["h", "p", "value", "estimate", "bracket_lo", "bracket_hi", "truncation_bound", "bound", "pass"]);
            let mut passed = true;
            for (i, r) in res.iter().enumerate() {
                let h = cfg.h_list[i / 2];
                let bound = if r.exponent == 2 { 9.0 } else { 6.0 };
                let ok = r.value >= -1e-9 && r.value < bound;
                passed &= ok;
                csv.row(
                    &[
                        num(h),
                        r.exponent.to_string(),
                        num(r.value),
                        num(r.estimate()),
                        num(r.bracket.0),
                        num(r.bracket.1),
                        num(r.truncation_bound),
                        num(bound),
                        ok.to_string(),
                    ],
                    &digest,
                    &echo,
                );
            }
            Ok(Outcome { report: Some(csv.write(dir, "theorem2.csv")?), passed })
        }
        Command::Lemmas => {
            let digest = digest_or_none(cfg)?;
            let mut csv = Csv::new(&["lemma_id", "params", "residual", "threshold", "pass"]);
            let mut passed = true;
            let mut push = |csv: &mut Csv, id: &str, params: &str, residual: f64, threshold: f64| {
                let ok = residual < threshold;
                passed &= ok;
                csv.row(&[id.to_string(), params.to_string(), num(residual), num(threshold), ok.to_string()], &digest, &echo);
            };
            for lemma in IbpLemma::ALL {
                let mut worst = 0.0f64;
                for h in [0.0, 0.5, 1.0, 2.0] {
                    for big_l in [5.0, 10.0] {
                        for beta in [0.3, 0.5, 0.9] {
                            worst = worst.max(ibp_identity_residual(lemma, h, big_l, beta)?);
                        }
                    }
                }
                push(&mut csv, lemma.label(), "h=0|0.5|1|2;L=5|10;beta=0.3|0.5|0.9", worst, 1e-8);
            }
            if cfg.zeros_path.is_some() {
                let Loaded { zs, .. } = load(cfg)?;
                let z50 = zs.first(50.min(zs.count()))?;
                let mut worst = 0.0f64;
                for c in [0.0, 0.5, 1.0, 2.0] {
                    for h in [0.0, 0.5, 1.0] {
                        let b = fejer_block(&z50, c, h, true, &PairSumConfig::exact())?;
                        worst = worst.max((b.lhs_quadrature.unwrap_or(f64::NAN) - b.rhs_pair_sum).abs());
                    }
                }
                push(&mut csv, "6.3", "N=50;c=0|0.5|1|2;h=0|0.5|1", worst, 1e-6);
                let z500 = zs.first(500.min(zs.count()))?;
                let mut worst = 0.0f64;
                for h in [0.0, 1.0] {
                    worst = worst.max(lemma_21_22_check(&z500, 0.5, h)?);
                }
                push(&mut csv, "2.1-2.2", "N=500;beta=0.5;h=0|1", worst, 1e-3);
            }
            Ok(Outcome { report: Some(csv.write(dir, "lemmas.csv")?), passed })
        }
        Command::Tpc { n, d } => {
            let reach = d.iter().map(|d| d.unsigned_abs()).max().unwrap_or(0);
            let table = build_lambda(cfg.prime_limit.max(n + reach))?;
            let digest = digest_or_none(cfg)?;
            let mut csv = Csv::new(&["n", "d", "raw_sum", "singular", "ratio"]);
            for &di in d {
                let r = tpc_ratio(*n, di, &table)?;
                let ratio = r.ratio.map_or("none".to_string(), num);
                csv.row(&[n.to_string(), di.to_string(), num(r.raw_sum), num(r.singular), ratio], &digest, &echo);
            }
            Ok(Outcome { report: Some(csv.write(dir, "tpc.csv")?), passed: true })
        }
        Command::Fetch { url, sha256, dest, name } => {
            let path = fetch_zero_table(url, sha256, dest, name)?;
            eprintln!("stored {}", path.display());
            Ok(Outcome { report: None, passed: true })
        }
    }
}

/// |ci − rhs − gap| from the two forms of the theorem.
pub fn ci_agreement(rhs: &MomentReport, ci: &MomentReport) -> f64 {
    (ci.rhs_total - rhs.rhs_total - ci.meta("form_gap").unwrap_or(0.0)).abs()
}

/// Parses `args` (program name first) and runs; returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let cfg = match RunConfig::resolve(&cli.common) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    match run(&cli.command, &cfg) {
        Ok(out) => {
            if let Some(p) = &out.report {
                eprintln!("wrote {}", p.display());
            }
            if out.passed {
                0
            } else {
                eprintln!("error: one or more checks failed");
                2
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
