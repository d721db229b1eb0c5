//! Command-line front end. [`run`] parses arguments and returns the exit
//! status together with the text that would be written to stdout and stderr,
//! so the binary is a thin wrapper and tests can call it directly.
//!
//! Exit status: 0 on success, 1 when a verification finds a violation, 2 for
//! malformed input.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::ghrs::{GeneratorForm, GhrsCode, DEFAULT_BUDGET};
use crate::interp::{dual_multiplier, verify_duality};
use crate::ldpc::{ldpc_condition, measured_weights, sparsity_certificate, GraphFormat, SparsityReport, TannerGraph};
use crate::matspace::VecOrder;
use crate::poly::Polynomial;
use crate::qc::{is_quasi_cyclic, qc_code, satisfies_ratios, shift_witness, QcSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "ghrs", version, about = "Generalized hyperderivative Reed-Solomon codes in the NRT metric")]
struct Cli {
    /// Emit stable `key: value` lines instead of the human report.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode a polynomial given as comma-separated coefficients, low degree first.
    Encode {
        codefile: PathBuf,
        #[arg(long = "poly", allow_hyphen_values = true)]
        poly: String,
    },
    /// Print a generator matrix.
    Genmatrix {
        codefile: PathBuf,
        #[arg(long, default_value = "raw", value_parser = parse_form)]
        form: GeneratorForm,
        #[arg(long, default_value = "row", value_parser = parse_order)]
        order: VecOrder,
    },
    /// Print the canonical (RREF) parity-check matrix.
    Paritycheck {
        codefile: PathBuf,
        #[arg(long, default_value = "row", value_parser = parse_order)]
        order: VecOrder,
    },
    /// Exhaustive NRT minimum distance and MDS check.
    Mindist {
        codefile: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Worker threads; the result does not depend on this.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the dual multiplier W and the dual code file.
    Dual { codefile: PathBuf },
    /// Check that the W-code is the dual of the V-code.
    VerifyDuality { codefile: PathBuf },
    /// Sparsity of G and H, the zero-count bound and the LDPC condition.
    Sparsity { codefile: PathBuf },
    /// Export the Tanner graph of the parity-check matrix.
    Tanner {
        codefile: PathBuf,
        #[arg(long, default_value = "alist", value_parser = parse_graph_format)]
        format: GraphFormat,
    },
    /// Check closure under the column-cyclic shift.
    QcCheck { codefile: PathBuf },
    /// Build a quasi-cyclic code from a spec file and print its code file.
    QcMake {
        qcspec: PathBuf,
        /// Dimension; overrides `t:` in the spec file.
        #[arg(long)]
        t: Option<usize>,
    },
}

fn parse_form(s: &str) -> std::result::Result<GeneratorForm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_order(s: &str) -> std::result::Result<VecOrder, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_graph_format(s: &str) -> std::result::Result<GraphFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (including the program name) and executes the subcommand.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                CommandResult { status, stdout: text, stderr: String::new() }
            } else {
                CommandResult { status, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((status, stdout)) => CommandResult { status, stdout, stderr: String::new() },
        Err(e) => CommandResult {
            status: if matches!(e, Error::Verification(_)) { 1 } else { 2 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load_code(path: &Path) -> Result<GhrsCode> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    GhrsCode::parse(&text)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(v: &[crate::field::FieldElement]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let machine = cli.machine;
    let mut out = String::new();
    let mut status = 0;
    match &cli.command {
        Command::Encode { codefile, poly } => {
            let code = load_code(codefile)?;
            let f = Polynomial::parse(code.field(), poly)?;
            let a = code.evaluate(&f)?;
            if machine {
                writeln!(out, "row_major: {}", join(&a.vectorize(VecOrder::RowMajor))).unwrap();
                writeln!(out, "col_major: {}", join(&a.vectorize(VecOrder::ColMajor))).unwrap();
                writeln!(out, "weight: {}", a.nrt_weight()).unwrap();
            } else {
                write!(out, "{a}").unwrap();
                writeln!(out, "row_major: {}", join(&a.vectorize(VecOrder::RowMajor))).unwrap();
                writeln!(out, "col_major: {}", join(&a.vectorize(VecOrder::ColMajor))).unwrap();
                writeln!(out, "NRT weight: {}", a.nrt_weight()).unwrap();
            }
        }
        Command::Genmatrix { codefile, form, order } => {
            let code = load_code(codefile)?;
            let g = code.generator_matrix(*order, *form);
            if machine {
                let rep = SparsityReport::of(&g);
                writeln!(out, "dimension: {}", g.rank()).unwrap();
                machine_sparsity(&mut out, &rep);
            } else {
                out.push_str(&g.to_text());
            }
        }
        Command::Paritycheck { codefile, order } => {
            let code = load_code(codefile)?;
            let h = code.parity_check_matrix(*order);
            if machine {
                writeln!(out, "dimension: {}", h.rows()).unwrap();
                machine_sparsity(&mut out, &SparsityReport::of(&h));
            } else {
                out.push_str(&h.to_text());
            }
        }
        Command::Mindist { codefile, budget, jobs } => {
            let code = load_code(codefile)?;
            let report = match jobs {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads((*n).max(1))
                    .build()
                    .map_err(|e| Error::InvalidParameters(e.to_string()))?
                    .install(|| code.mds_check(*budget))?,
                None => code.mds_check(*budget)?,
            };
            if report.hypothesis_holds && !report.is_mds() {
                status = 1;
            }
            if machine {
                writeln!(out, "dimension: {}", report.dimension).unwrap();
                writeln!(out, "distance: {}", report.distance).unwrap();
                writeln!(out, "defect: {}", report.singleton_defect).unwrap();
            } else {
                writeln!(out, "dimension: {}", report.dimension).unwrap();
                writeln!(out, "d = {}, MDS: {}", report.distance, yes_no(report.is_mds())).unwrap();
                writeln!(out, "singleton defect: {}", report.singleton_defect).unwrap();
                if !report.hypothesis_holds {
                    writeln!(out, "note: V has a zero entry; MDS was checked, not implied").unwrap();
                }
            }
        }
        Command::Dual { codefile } => {
            let code = load_code(codefile)?;
            let w = dual_multiplier(code.alpha(), code.multipliers())?;
            let dual_t = code.n() - code.t();
            let w_nonzero = w.data().iter().all(|c| !c.is_zero());
            if machine {
                writeln!(out, "dimension: {dual_t}").unwrap();
                writeln!(out, "w: {}", join(w.data())).unwrap();
                writeln!(out, "w_all_nonzero: {}", yes_no(w_nonzero)).unwrap();
            } else {
                writeln!(out, "W:").unwrap();
                write!(out, "{w}").unwrap();
                writeln!(out, "W all nonzero: {}", yes_no(w_nonzero)).unwrap();
                if dual_t == 0 {
                    writeln!(out, "dual code: zero (t = rs)").unwrap();
                } else {
                    let dual = GhrsCode::new(code.field(), code.alpha().to_vec(), w, dual_t)?;
                    writeln!(out, "dual code:").unwrap();
                    out.push_str(&dual.to_text());
                }
            }
        }
        Command::VerifyDuality { codefile } => {
            let code = load_code(codefile)?;
            if code.t() >= code.n() {
                return Err(Error::InvalidParameters("duality needs t ≤ rs - 1".into()));
            }
            let rep = verify_duality(code.alpha(), code.multipliers(), code.t())?;
            if !rep.passed() {
                status = 1;
            }
            let violation = rep
                .first_violation
                .map_or("none".to_string(), |(a, b)| format!("Ev_V(x^{a}) . Ev_W(x^{b}) != 0"));
            if machine {
                writeln!(out, "duality: {}", if rep.passed() { "pass" } else { "fail" }).unwrap();
                writeln!(out, "dimension: {}", rep.dim_v).unwrap();
                writeln!(out, "dual_dimension: {}", rep.dim_w).unwrap();
            } else {
                writeln!(out, "W:").unwrap();
                write!(out, "{}", rep.w).unwrap();
                writeln!(out, "W all nonzero: {}", yes_no(rep.w_all_nonzero)).unwrap();
                writeln!(out, "first orthogonality violation: {violation}").unwrap();
                writeln!(out, "dimensions: {} + {} (rs = {})", rep.dim_v, rep.dim_w, code.n()).unwrap();
                writeln!(out, "row spaces equal: {}", yes_no(rep.row_space_equal)).unwrap();
                writeln!(out, "duality: {}", if rep.passed() { "pass" } else { "fail" }).unwrap();
            }
        }
        Command::Sparsity { codefile } => {
            let code = load_code(codefile)?;
            let g = SparsityReport::of(&code.generator_matrix(VecOrder::RowMajor, GeneratorForm::Rref));
            let h_mat = code.parity_check_matrix(VecOrder::RowMajor);
            let h = SparsityReport::of(&h_mat);
            let cert = match ldpc_condition(code.r(), code.s(), code.t()) {
                Ok(_) if code.all_nonzero() => Some(sparsity_certificate(&code)?),
                _ => None,
            };
            if cert.as_ref().is_some_and(|c| !c.consistent()) {
                status = 1;
            }
            if machine {
                writeln!(out, "zeros: {}", g.zeros).unwrap();
                writeln!(out, "nonzeros: {}", g.nonzeros).unwrap();
                writeln!(out, "sparsity_pct: {}", g.percent()).unwrap();
                writeln!(out, "h_zeros: {}", h.zeros).unwrap();
                writeln!(out, "h_nonzeros: {}", h.nonzeros).unwrap();
                writeln!(out, "h_sparsity_pct: {}", h.percent()).unwrap();
                match &cert {
                    Some(c) => {
                        writeln!(out, "forward_zeros: {}", c.report.zeros).unwrap();
                        writeln!(out, "condition: {}", c.condition).unwrap();
                    }
                    None => writeln!(out, "condition: n/a").unwrap(),
                }
            } else {
                writeln!(out, "G sparsity: {}% ({}/{})", g.percent(), g.zeros, g.total()).unwrap();
                writeln!(out, "H sparsity: {}% ({}/{})", h.percent(), h.zeros, h.total()).unwrap();
                let w = measured_weights(&h_mat, Some(code.s()));
                writeln!(out, "H max row weight: {}, max column weight: {}", w.max_row, w.max_col).unwrap();
                match &cert {
                    Some(c) => {
                        let bound = c.bound.map_or("none".into(), |b| b.to_string());
                        writeln!(
                            out,
                            "forward-echelon G: {} zeros, {} nonzeros (bound {bound}, {})",
                            c.report.zeros,
                            c.report.nonzeros,
                            if c.bound_satisfied() { "satisfied" } else { "violated" }
                        )
                        .unwrap();
                        writeln!(out, "LDPC condition: {}", c.condition).unwrap();
                        writeln!(out, "dual LDPC certified: {}", yes_no(c.certified())).unwrap();
                    }
                    None => writeln!(out, "LDPC condition: n/a (needs r, s, t >= 2, t <= rs - 1, V nonzero)").unwrap(),
                }
            }
        }
        Command::Tanner { codefile, format } => {
            let code = load_code(codefile)?;
            let g = TannerGraph::from_parity_check(&code.parity_check_matrix(VecOrder::RowMajor));
            out.push_str(&crate::ldpc::export_graph(&g, *format));
        }
        Command::QcCheck { codefile } => {
            let code = load_code(codefile)?;
            let qc = is_quasi_cyclic(&code);
            if !qc {
                status = 1;
            }
            if machine {
                writeln!(out, "qc: {}", yes_no(qc)).unwrap();
            } else {
                writeln!(out, "quasi-cyclic: {}", yes_no(qc)).unwrap();
                if let Some(alpha) = geometric_ratio(&code) {
                    let ratios = satisfies_ratios(alpha, code.multipliers());
                    writeln!(out, "points are powers of {alpha}; ratio condition: {}", yes_no(ratios)).unwrap();
                    if ratios {
                        let f = code.field();
                        let all = (0..code.t()).all(|m| shift_witness(&code, &Polynomial::monomial(f, f.one(), m)).is_ok());
                        writeln!(out, "shift witness f(x/alpha) on monomials: {}", if all { "ok" } else { "failed" }).unwrap();
                    }
                }
            }
        }
        Command::QcMake { qcspec, t } => {
            let text = fs::read_to_string(qcspec)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", qcspec.display())))?;
            let (spec, file_t) = QcSpec::parse(&text)?;
            let t = t.or(file_t).ok_or_else(|| Error::Parse("missing t (pass --t or add `t:`)".into()))?;
            let code = qc_code(&spec, t)?;
            let qc = is_quasi_cyclic(&code);
            if !qc {
                status = 1;
            }
            if machine {
                writeln!(out, "qc: {}", yes_no(qc)).unwrap();
            } else {
                out.push_str(&code.to_text());
            }
        }
    }
    Ok((status, out))
}

/// `α` when the points are `1, α, α², ...` with `α` of order `r`.
fn geometric_ratio(code: &GhrsCode) -> Option<crate::field::FieldElement> {
    let f = code.field();
    let u = code.alpha();
    let alpha = if u.len() > 1 { u[1] } else { f.one() };
    let ok = f.multiplicative_order(alpha) == Some(u.len())
        && u.iter().enumerate().all(|(j, &x)| x == f.pow(alpha, j as u64));
    ok.then_some(alpha)
}

fn machine_sparsity(out: &mut String, rep: &SparsityReport) {
    writeln!(out, "zeros: {}", rep.zeros).unwrap();
    writeln!(out, "nonzeros: {}", rep.nonzeros).unwrap();
    writeln!(out, "sparsity_pct: {}", rep.percent()).unwrap();
}
