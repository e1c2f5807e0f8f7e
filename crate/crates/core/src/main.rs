//! Command-line front end: loads JSON inputs, dispatches to the library and
//! emits machine-readable reports on standard output.
//!
//! Exit codes: 0 = all checks passed, 1 = a mathematical check failed,
//! 2 = malformed input.

use clap::{Parser, Subcommand};
use rbsys::factorization::{build_factorization, factorize_element, FactorizationError};
use rbsys::io::{
    load_json, render, ElementFactorization, FactorizationReport, GroupFile, IoError,
    LieAlgebraFile, LieFactorizeReport, LieProjectionsReport, LieVerifyReport, MatrixFile,
    OperatorFile, StructureReport, VerifyReport, ViolationJson,
};
use rbsys::lie::{
    check_on_random_vectors, from_triple_decomposition, lie_factorize, lie_rbs_violations,
    verify_lie_rbs, verify_tmybe, LieError,
};
use rbsys::qlinalg::Subspace;
use rbsys::rbs::{
    descendent_assoc_witness, verify_rbs, verify_skew_truss, OperatorMap, RbsError,
};
use rbsys::search::{canonicalize, enumerate_naive, enumerate_pruned, Mode};
use rbsys::structure::direct_sum_decomposition;
use rbsys::tables::{Kind, MulTable};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rbsys", version, about = "Rota-Baxter system workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Human-readable JSON indentation.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum ModeArg {
    Rbs,
    Associative,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Rbs => Mode::Rbs,
            ModeArg::Associative => Mode::Associative,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining identities of an operator pair.
    Verify {
        group: PathBuf,
        b1: PathBuf,
        b2: PathBuf,
        /// List every violation instead of only the first.
        #[arg(long)]
        all: bool,
        /// Accept monoid/semigroup carriers.
        #[arg(long)]
        monoid: bool,
    },
    /// Check associativity of the descendent operation and the truss law.
    Descendent {
        group: PathBuf,
        b1: PathBuf,
        b2: PathBuf,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        monoid: bool,
    },
    /// Enumerate all operator pairs on a carrier into a catalog.
    Enumerate {
        group: PathBuf,
        #[arg(long, value_enum, default_value = "rbs")]
        mode: ModeArg,
        /// Worker count; the catalog is identical for every value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Node budget; exceeding it yields a catalog marked incomplete.
        #[arg(long)]
        budget: Option<u64>,
        /// Use the exhaustive oracle (order <= 4) instead of pruning.
        #[arg(long)]
        naive: bool,
        /// Reduce modulo the automorphisms in the given operator files.
        #[arg(long)]
        automorphism: Vec<PathBuf>,
        /// Also write the catalog to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        monoid: bool,
    },
    /// Component partition and direct-sum decomposition report.
    Structure {
        group: PathBuf,
        b1: PathBuf,
        b2: PathBuf,
    },
    /// Image/kernel subgroups, Cayley transform and unique factorization.
    Factorize {
        group: PathBuf,
        b1: PathBuf,
        b2: PathBuf,
        /// Also factorize this element of the cocycle image.
        #[arg(long)]
        element: Option<usize>,
    },
    /// Check the defining identities of a Lie operator pair.
    LieVerify {
        algebra: PathBuf,
        b1: PathBuf,
        b2: PathBuf,
        /// Seed for the random-vector bilinearity spot check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the twisted modified Yang-Baxter equations on (R, phi).
    LieTmybe {
        algebra: PathBuf,
        r: PathBuf,
        phi: PathBuf,
    },
    /// Uniquely decompose a vector of phi(g) as u_plus + u_minus.
    LieFactorize {
        algebra: PathBuf,
        b1: PathBuf,
        b2: PathBuf,
        /// Vector as a one-row matrix file.
        w: PathBuf,
    },
    /// Build the system of projections onto g_plus/g_minus along V.
    LieFromProjections {
        algebra: PathBuf,
        gplus: PathBuf,
        gminus: PathBuf,
        v: PathBuf,
    },
}

/// Outcome of a dispatched command: the rendered report plus whether every
/// mathematical check passed.
struct Outcome {
    report: String,
    ok: bool,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Io(#[from] IoError),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
}

fn load_group(path: &Path, allow_monoid: bool) -> Result<MulTable, CliError> {
    let file: GroupFile = load_json(path)?;
    let table = file.to_table(&path.display().to_string())?;
    if !allow_monoid && table.kind() != Kind::Group {
        return Err(CliError::Input {
            path: path.display().to_string(),
            message: "carrier is not a group (pass --monoid to accept weaker kinds)".into(),
        });
    }
    Ok(table)
}

fn load_operator(path: &Path, order: usize) -> Result<OperatorMap, CliError> {
    let file: OperatorFile = load_json(path)?;
    OperatorMap::new(file.map, order).map_err(|e: RbsError| CliError::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Verify { group, b1, b2, all, monoid } => {
            let g = load_group(group, *monoid)?;
            let b1 = load_operator(b1, g.order())?;
            let b2 = load_operator(b2, g.order())?;
            let violations: Vec<ViolationJson> = if *all {
                rbsys::rbs::violations(&g, &b1, &b2)
                    .into_iter()
                    .map(|(eq, a, b)| ViolationJson::pair(eq, a, b))
                    .collect()
            } else {
                rbsys::rbs::first_violation(&g, &b1, &b2)
                    .map(|(eq, a, b)| ViolationJson::pair(eq, a, b))
                    .into_iter()
                    .collect()
            };
            let report = VerifyReport { ok: violations.is_empty(), violations };
            Ok(Outcome { report: render(&report, cli.pretty), ok: report.ok })
        }
        Command::Descendent { group, b1, b2, all, monoid } => {
            let g = load_group(group, *monoid)?;
            let b1 = load_operator(b1, g.order())?;
            let b2 = load_operator(b2, g.order())?;
            let mut violations = Vec::new();
            if *all {
                let circ = rbsys::rbs::descendent_table(&g, &b1, &b2);
                let n = g.order();
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            if circ.mul(circ.mul(a, b), c) != circ.mul(a, circ.mul(b, c)) {
                                violations.push(ViolationJson::triple("assoc", a, b, c));
                            }
                        }
                    }
                }
            } else if let Some((a, b, c)) = descendent_assoc_witness(&g, &b1, &b2) {
                violations.push(ViolationJson::triple("assoc", a, b, c));
            }
            // the truss law needs inverses; on group carriers it is part of
            // the descendent report
            if violations.is_empty() && g.is_group() {
                if verify_skew_truss(&g, &b1, &b2) != Ok(true) {
                    let circ = rbsys::rbs::descendent_table(&g, &b1, &b2);
                    let n = g.order();
                    'scan: for a in 0..n {
                        let phi_inv = g.inv(g.mul(b1.apply(a), b2.apply(a)));
                        for b in 0..n {
                            for c in 0..n {
                                if circ.mul(a, g.mul(b, c))
                                    != g.mul3(circ.mul(a, b), phi_inv, circ.mul(a, c))
                                {
                                    violations.push(ViolationJson::triple("truss", a, b, c));
                                    break 'scan;
                                }
                            }
                        }
                    }
                }
            }
            let report = VerifyReport { ok: violations.is_empty(), violations };
            Ok(Outcome { report: render(&report, cli.pretty), ok: report.ok })
        }
        Command::Enumerate {
            group,
            mode,
            jobs,
            budget,
            naive,
            automorphism,
            output,
            monoid,
        } => {
            let g = load_group(group, *monoid)?;
            let mode: Mode = (*mode).into();
            let catalog = if *naive {
                enumerate_naive(&g, mode).map_err(|e| CliError::Input {
                    path: group.display().to_string(),
                    message: e.to_string(),
                })?
            } else {
                enumerate_pruned(&g, mode, *jobs, budget.unwrap_or(u64::MAX))
            };
            let catalog = if automorphism.is_empty() {
                catalog
            } else {
                let mut autos = Vec::new();
                for path in automorphism {
                    autos.push(load_operator(path, g.order())?);
                }
                canonicalize(&g, &catalog, &autos).map_err(|e| CliError::Input {
                    path: group.display().to_string(),
                    message: e.to_string(),
                })?
            };
            let rendered = render(&catalog, cli.pretty);
            if let Some(out) = output {
                std::fs::write(out, format!("{rendered}\n")).map_err(|source| {
                    IoError::Read { path: out.display().to_string(), source }
                })?;
            }
            Ok(Outcome { report: rendered, ok: true })
        }
        Command::Structure { group, b1, b2 } => {
            let g = load_group(group, false)?;
            let b1 = load_operator(b1, g.order())?;
            let b2 = load_operator(b2, g.order())?;
            let inst = verify_rbs(&g, &b1, &b2).map_err(|e| CliError::Input {
                path: group.display().to_string(),
                message: format!("operator pair is not a Rota-Baxter system: {e}"),
            })?;
            let decomposition = direct_sum_decomposition(&inst);
            let partition = rbsys::structure::partition(&inst);
            let report = StructureReport {
                components: partition.components.iter().map(|c| c.members().to_vec()).collect(),
                k: partition.e_classes.members().to_vec(),
                base: partition.base,
                opl_ok: decomposition.psi.len() == g.order(),
            };
            Ok(Outcome { report: render(&report, cli.pretty), ok: true })
        }
        Command::Factorize { group, b1, b2, element } => {
            let g = load_group(group, false)?;
            let b1 = load_operator(b1, g.order())?;
            let b2 = load_operator(b2, g.order())?;
            let inst = verify_rbs(&g, &b1, &b2).map_err(|e| CliError::Input {
                path: group.display().to_string(),
                message: format!("operator pair is not a Rota-Baxter system: {e}"),
            })?;
            let fd = build_factorization(&inst).map_err(|e| CliError::Input {
                path: group.display().to_string(),
                message: e.to_string(),
            })?;
            rbsys::factorization::pair_embedding(&inst, &fd).map_err(|e| CliError::Input {
                path: group.display().to_string(),
                message: e.to_string(),
            })?;
            let mut ok = true;
            let element = match element {
                None => None,
                Some(a) => match factorize_element(&inst, &fd, *a) {
                    Ok((a1, a2)) => Some(ElementFactorization { element: *a, a1, a2 }),
                    Err(FactorizationError::NotInImage { .. }) => {
                        ok = false;
                        None
                    }
                    Err(e) => {
                        return Err(CliError::Input {
                            path: group.display().to_string(),
                            message: e.to_string(),
                        })
                    }
                },
            };
            let report = FactorizationReport {
                g1: fd.g1.members().to_vec(),
                g2: fd.g2.members().to_vec(),
                h1: fd.h1.members().to_vec(),
                h2: fd.h2.members().to_vec(),
                theta: fd.theta.clone(),
                g_theta: fd.g_theta.clone(),
                element,
            };
            Ok(Outcome { report: render(&report, cli.pretty), ok })
        }
        Command::LieVerify { algebra, b1, b2, seed } => {
            let alg = load_algebra(algebra)?;
            let b1 = load_matrix(b1)?;
            let b2 = load_matrix(b2)?;
            let violations = lie_rbs_violations(&alg, &b1, &b2);
            let mut report = LieVerifyReport::from_violations(&violations);
            if report.ok {
                let lr = verify_lie_rbs(&alg, &b1, &b2).expect("no violations were found");
                // bilinearity spot check on seeded random vectors
                report.ok = check_on_random_vectors(&lr, *seed, 100);
            }
            Ok(Outcome { ok: report.ok, report: render(&report, cli.pretty) })
        }
        Command::LieTmybe { algebra, r, phi } => {
            let alg = load_algebra(algebra)?;
            let r = load_matrix(r)?;
            let phi = load_matrix(phi)?;
            let check = verify_tmybe(&alg, &r, &phi).map_err(|e| CliError::Input {
                path: algebra.display().to_string(),
                message: e.to_string(),
            })?;
            let report = LieVerifyReport::from_violations(&check.violations);
            Ok(Outcome { ok: check.ok, report: render(&report, cli.pretty) })
        }
        Command::LieFactorize { algebra, b1, b2, w } => {
            let alg = load_algebra(algebra)?;
            let b1 = load_matrix(b1)?;
            let b2 = load_matrix(b2)?;
            let w_file: MatrixFile = load_json(w)?;
            let w = w_file.to_vector(&w.display().to_string())?;
            let lr = verify_lie_rbs(&alg, &b1, &b2).map_err(|e| CliError::Input {
                path: algebra.display().to_string(),
                message: format!("operator pair is not a system: {e}"),
            })?;
            match lie_factorize(&lr, &w) {
                Ok((up, um)) => {
                    let report = LieFactorizeReport {
                        ok: true,
                        u_plus: up.iter().map(rbsys::qlinalg::format_rat).collect(),
                        u_minus: um.iter().map(rbsys::qlinalg::format_rat).collect(),
                    };
                    Ok(Outcome { report: render(&report, cli.pretty), ok: true })
                }
                Err(e @ (LieError::NotInImage | LieError::NotDecomposable)) => {
                    let report =
                        LieFactorizeReport { ok: false, u_plus: vec![], u_minus: vec![] };
                    eprintln!("rbsys: {e}");
                    Ok(Outcome { report: render(&report, cli.pretty), ok: false })
                }
                Err(e) => Err(CliError::Input {
                    path: algebra.display().to_string(),
                    message: e.to_string(),
                }),
            }
        }
        Command::LieFromProjections { algebra, gplus, gminus, v } => {
            let alg = load_algebra(algebra)?;
            let gplus = load_subspace(gplus, alg.dim())?;
            let gminus = load_subspace(gminus, alg.dim())?;
            let v = load_subspace(v, alg.dim())?;
            let lr = from_triple_decomposition(&alg, &gplus, &gminus, &v).map_err(|e| {
                CliError::Input { path: algebra.display().to_string(), message: e.to_string() }
            })?;
            let report = LieProjectionsReport {
                ok: true,
                b1: MatrixFile::from_matrix(lr.b1()),
                b2: MatrixFile::from_matrix(lr.b2()),
            };
            Ok(Outcome { report: render(&report, cli.pretty), ok: true })
        }
    }
}

fn load_algebra(path: &Path) -> Result<rbsys::lie::LieAlgebra, CliError> {
    let file: LieAlgebraFile = load_json(path)?;
    Ok(file.to_algebra(&path.display().to_string())?)
}

fn load_matrix(path: &Path) -> Result<rbsys::qlinalg::RationalMatrix, CliError> {
    let file: MatrixFile = load_json(path)?;
    Ok(file.to_matrix(&path.display().to_string())?)
}

fn load_subspace(path: &Path, ambient: usize) -> Result<Subspace, CliError> {
    let m = load_matrix(path)?;
    let rows: Vec<Vec<rbsys::qlinalg::Rat>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    Subspace::span(ambient, &rows).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            println!("{}", outcome.report);
            if outcome.ok {
                ExitCode::from(0)
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("rbsys: {err}");
            ExitCode::from(2)
        }
    }
}
