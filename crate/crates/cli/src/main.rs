mod report;
mod suite;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use djkm_core::cocycle::{self, RMonomial};
use djkm_core::diffops::{verify_ode, OdeKind};
use djkm_core::families::{family_table, FamilyId, IndexView};
use djkm_core::oracle;
use djkm_core::ortho::{self, EigenRule, OrthoFamily};
use djkm_core::par::{with_threads, Execution};

use report::{Item, RunReport};

#[derive(Parser)]
#[command(
    name = "djkm",
    version,
    about = "Exact DJKM polynomial families: generation and verification"
)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true, env = "DJKM_THREADS")]
    threads: Option<usize>,
    /// Run every sweep on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// CSV output (quadrature only).
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(name = "P-4")]
    P4,
    #[value(name = "P-3")]
    P3,
    #[value(name = "P-2")]
    P2,
    #[value(name = "P-1")]
    P1,
    #[value(name = "q")]
    Q,
    #[value(name = "qbar")]
    QBar,
}

impl FamilyArg {
    fn source(self) -> FamilyId {
        match self {
            FamilyArg::P4 | FamilyArg::Q => FamilyId::P4,
            FamilyArg::P3 => FamilyId::P3,
            FamilyArg::P2 | FamilyArg::QBar => FamilyId::P2,
            FamilyArg::P1 => FamilyId::P1,
        }
    }

    fn ortho(self) -> anyhow::Result<OrthoFamily> {
        match self {
            FamilyArg::Q | FamilyArg::P4 => Ok(OrthoFamily::Q),
            FamilyArg::QBar | FamilyArg::P2 => Ok(OrthoFamily::QBar),
            _ => bail!("--family must be q or qbar for this command"),
        }
    }

    fn label(self) -> &'static str {
        match self {
            FamilyArg::P4 => "P-4",
            FamilyArg::P3 => "P-3",
            FamilyArg::P2 => "P-2",
            FamilyArg::P1 => "P-1",
            FamilyArg::Q => "q",
            FamilyArg::QBar => "qbar",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ViewArg {
    Original,
    Shifted,
    Q,
    Qbar,
}

impl From<ViewArg> for IndexView {
    fn from(v: ViewArg) -> Self {
        match v {
            ViewArg::Original => IndexView::Original,
            ViewArg::Shifted => IndexView::Shifted,
            ViewArg::Q => IndexView::Q,
            ViewArg::Qbar => IndexView::QBar,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Shape {
    /// `t^{i-1}u d(t^j)`, equal to `j psi_ij`.
    Mixed,
    /// `t^i d(t^j)`.
    Plain,
    /// `t^{i-1}u d(t^{j-1}u)`.
    Uu,
    /// The closed-form table value `psi_ij`.
    Psi,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum RuleArg {
    AsDisplayed,
    Property3,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Full acceptance sizes.
    Desk,
    /// Reduced sizes for smoke runs.
    Quick,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a family table.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Index view; defaults to shifted (q/qbar families default to their own view).
        #[arg(long, value_enum)]
        view: Option<ViewArg>,
        /// Largest index in the chosen view.
        #[arg(long, default_value_t = 12, allow_negative_numbers = true)]
        max: i64,
    },
    /// Check the family's differential equation member by member.
    VerifyOde {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 100)]
        max_n: i64,
    },
    /// Compare generating-function expansions with the recurrence.
    OracleCompare {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Highest power of z compared.
        #[arg(long, default_value_t = 40)]
        order: i64,
    },
    /// Evaluate the central 2-cocycle or sweep the psi table.
    Cocycle {
        #[arg(long, allow_negative_numbers = true)]
        i: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        j: Option<i64>,
        #[arg(long, value_enum, default_value = "mixed")]
        shape: Shape,
        /// Sweep |i|, |j| <= bound instead of a single pair.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 12)]
        bound: i64,
    },
    /// Favard data, Hankel determinants and the exact Gram matrix.
    Orthogonality {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 14)]
        hankel: usize,
        #[arg(long, default_value_t = 8)]
        gram: usize,
        /// Number of normalization constants lambda_n^2 to list.
        #[arg(long, default_value_t = 20)]
        lambdas: usize,
    },
    /// Gauss quadrature nodes and weights.
    Quadrature {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 20)]
        nodes: usize,
        /// Degree bound for the discrete orthogonality check.
        #[arg(long, default_value_t = 8)]
        max_deg: usize,
    },
    /// Solve for second-order eigenoperators of the family.
    Nonclassical {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 6)]
        max_n: i64,
        #[arg(long, value_enum, default_value = "as-displayed")]
        rule: RuleArg,
    },
    /// Run every check.
    All {
        #[arg(long, value_enum, default_value = "desk")]
        profile: Profile,
    },
}

/// Either a structured report (exit code from its status) or raw data.
enum Output {
    Report(RunReport),
    Data(String),
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

fn ode_kind(family: FamilyArg) -> OdeKind {
    match family {
        FamilyArg::P4 => OdeKind::Elliptic1,
        FamilyArg::P2 => OdeKind::Elliptic2,
        FamilyArg::P1 => OdeKind::Case3,
        FamilyArg::P3 => OdeKind::Case4,
        FamilyArg::Q => OdeKind::QForm,
        FamilyArg::QBar => OdeKind::QBarForm,
    }
}

fn run(cli: &Cli, exec: Execution) -> anyhow::Result<Output> {
    let started = Instant::now();
    if cli.csv && !matches!(cli.cmd, Cmd::Quadrature { .. }) {
        bail!("--csv is only supported by the quadrature command");
    }
    let out = match &cli.cmd {
        Cmd::Gen { family, view, max } => {
            let view = view.map(IndexView::from).unwrap_or(match family {
                FamilyArg::Q => IndexView::Q,
                FamilyArg::QBar => IndexView::QBar,
                _ => IndexView::Shifted,
            });
            Output::Data(to_json(&family_table(family.source(), view, *max)))
        }
        Cmd::VerifyOde { family, max_n } => {
            let kind = ode_kind(*family);
            let items = verify_ode(kind, *max_n, exec)
                .into_iter()
                .map(|c| Item::new(format!("n={}", c.n), c.verified, c))
                .collect();
            let params = params! {"family" => family.label(), "operator" => kind, "max_n" => max_n};
            Output::Report(RunReport::new("verify-ode", params, items, started))
        }
        Cmd::OracleCompare { family, order } => {
            let mut items = Vec::new();
            match family {
                FamilyArg::P4 | FamilyArg::Q => {
                    let (a, b) = exec.join(
                        || oracle::expand_elliptic1(*order),
                        || oracle::expand_gegenbauer_sum(*order),
                    );
                    let (a, b) = (a?, b?);
                    items.push(Item::new("elliptic1", a.matched, a));
                    items.push(Item::new("gegenbauer_sum", b.matched, b));
                }
                FamilyArg::P2 | FamilyArg::QBar => {
                    let a = oracle::expand_elliptic2(*order)?;
                    items.push(Item::new("elliptic2", a.matched, a));
                }
                _ => bail!("--family must be P-4 or P-2 for oracle-compare"),
            }
            let ok = oracle::check_funde(*order, family.source());
            items.push(Item::new("funde", ok, params! {"order" => order}));
            let params = params! {"family" => family.label(), "order" => order};
            Output::Report(RunReport::new("oracle-compare", params, items, started))
        }
        Cmd::Cocycle {
            i,
            j,
            shape,
            verify,
            bound,
        } => {
            if *verify {
                let r = cocycle::verify_psi_table(*bound, exec);
                let items = vec![Item::new("psi_table", r.passed(), r)];
                let params = params! {"bound" => bound};
                Output::Report(RunReport::new("cocycle", params, items, started))
            } else {
                let (Some(i), Some(j)) = (i, j) else {
                    bail!("--i and --j are required unless --verify is given");
                };
                let (i, j) = (*i, *j);
                let v = match shape {
                    Shape::Mixed => cocycle::cocycle(RMonomial::tu(i - 1), RMonomial::t(j)),
                    Shape::Plain => cocycle::cocycle(RMonomial::t(i), RMonomial::t(j)),
                    Shape::Uu => cocycle::cocycle(RMonomial::tu(i - 1), RMonomial::tu(j - 1)),
                    Shape::Psi => cocycle::psi(i, j),
                };
                Output::Data(to_json(&v))
            }
        }
        Cmd::Orthogonality {
            family,
            hankel,
            gram,
            lambdas,
        } => {
            let fam = family.ortho()?;
            let items = orthogonality_items(fam, *hankel, *gram, *lambdas);
            let params = params! {"family" => fam, "hankel" => hankel, "gram" => gram, "lambdas" => lambdas};
            Output::Report(RunReport::new("orthogonality", params, items, started))
        }
        Cmd::Quadrature { family, nodes, max_deg } => {
            let fam = family.ortho()?;
            let quad = ortho::golub_welsch(fam, *nodes)?;
            if cli.csv {
                let mut s = String::from("node,weight\n");
                for (x, w) in quad.nodes.iter().zip(&quad.weights) {
                    s.push_str(&format!("{x:.16e},{w:.16e}\n"));
                }
                Output::Data(s)
            } else {
                let items = quadrature_items(fam, &quad, *max_deg)?;
                let params = params! {"family" => fam, "nodes" => nodes, "max_deg" => max_deg};
                Output::Report(RunReport::new("quadrature", params, items, started))
            }
        }
        Cmd::Nonclassical { family, max_n, rule } => {
            let fam = family.ortho()?;
            let eigen_rule = match rule {
                RuleArg::AsDisplayed => EigenRule::AsDisplayed,
                RuleArg::Property3 => EigenRule::Property3,
            };
            let w = ortho::nonclassical_check(fam, *max_n, eigen_rule);
            let items = vec![Item::new("only_constants", w.only_constants, w)];
            let params = params! {"family" => fam, "max_n" => max_n, "rule" => rule};
            Output::Report(RunReport::new("nonclassical", params, items, started))
        }
        Cmd::All { profile } => {
            let items = suite::run(*profile, exec)?;
            let params = params! {"profile" => profile};
            Output::Report(RunReport::new("all", params, items, started))
        }
    };
    Ok(out)
}

pub(crate) fn orthogonality_items(fam: OrthoFamily, hankel: usize, gram: usize, lambdas: usize) -> Vec<Item> {
    use num_traits::Signed;
    let data = fam.three_term();
    let beta: Vec<String> = (1..=hankel.max(1) as u64)
        .map(|n| data.beta_sq(n).to_string())
        .collect();
    let beta_ok = (1..=200u64).all(|n| data.beta_sq(n).is_positive());
    let l = ortho::favard_lambdas(lambdas);
    let l_ok = l.iter().all(Signed::is_positive) && l.get(1).is_none_or(|x| *x == djkm_core::exact::rat(2, 7));
    let h = ortho::hankel(fam, hankel);
    let h_ok = h.iter().all(Signed::is_positive);
    let g = ortho::gram_matrix(fam, gram);
    let g_ok = ortho::gram_check(fam, gram);
    let diag: Vec<String> = (0..=gram).map(|i| g[i][i].to_string()).collect();
    vec![
        Item::new(
            "three_term_positive",
            beta_ok,
            params! {"beta_sq" => beta, "checked_up_to" => 200},
        ),
        Item::new(
            "favard_lambdas",
            l_ok,
            params! {"lambda_sq" => l.iter().map(ToString::to_string).collect::<Vec<_>>()},
        ),
        Item::new(
            "hankel_positive",
            h_ok,
            params! {"delta" => h.iter().map(ToString::to_string).collect::<Vec<_>>()},
        ),
        Item::new("gram_diagonal", g_ok, params! {"diagonal" => diag}),
    ]
}

pub(crate) fn quadrature_items(
    fam: OrthoFamily,
    quad: &ortho::Quadrature,
    max_deg: usize,
) -> anyhow::Result<Vec<Item>> {
    let n = quad.len();
    let weight_sum: f64 = quad.weights.iter().sum();
    let asym = (0..n)
        .map(|k| (quad.nodes[k] + quad.nodes[n - 1 - k]).abs())
        .fold(0.0, f64::max);
    let rule_ok = (weight_sum - 1.0).abs() <= 1e-12 && asym <= 1e-12;
    let mut items = vec![Item::new(
        "rule",
        rule_ok,
        params! {
            "nodes" => quad.nodes,
            "weights" => quad.weights,
            "weight_sum_error" => (weight_sum - 1.0).abs(),
            "node_asymmetry" => asym,
            "max_eigen_residual" => quad.max_residual,
        },
    )];
    if max_deg < n {
        let o = ortho::quad_orthogonality(fam, n, max_deg)?;
        items.push(Item::new(
            "orthogonality",
            o.max_offdiag <= 1e-10 && o.min_diag > 0.0,
            o,
        ));
    }
    Ok(items)
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let result = with_threads(cli.threads, || run(&cli, exec));
    let (text, code) = match result {
        Ok(Output::Report(r)) => {
            let code = if r.passed() { 0 } else { 1 };
            (to_json(&r), code)
        }
        Ok(Output::Data(s)) => (s, 0),
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
