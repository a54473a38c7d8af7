use clap::{Args, Parser, Subcommand};
use cochad::{
    build_system, emit_ig, emit_jg, enumerate_hadamard_cocycles, family_basis, make_group,
    parse_group_table, render, search, verify_support, Error, EnumerateOptions, Family, FixMask,
    GroupTable, Result, SearchFilters, SearchOptions, Syntax,
};
use serde_json::json;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

/// Construct, search, verify, and export cocyclic Hadamard matrices over
/// the abelian (z) and dihedral (d) families of order 4t.
#[derive(Parser)]
#[command(name = "cochad", version, disable_help_subcommand = true)]
struct Cli {
    /// Worker threads for enumeration and search.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupChoice {
    /// Built-in family: z (abelian) or d (dihedral).
    #[arg(long)]
    group: Option<Family>,
    /// Order parameter; the group has order 4t.
    #[arg(long)]
    t: Option<usize>,
    /// Custom multiplication table file instead of a built-in family.
    #[arg(long)]
    group_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate every Hadamard cocycle of a group by brute force.
    Enumerate {
        #[command(flatten)]
        which: GroupChoice,
        /// Print only the count, not the matrices.
        #[arg(long)]
        count_only: bool,
    },
    /// Search coboundary products of a family representative.
    Search {
        /// Family: z or d.
        #[arg(long)]
        group: Family,
        /// Order parameter; matrices have order 4t.
        #[arg(long)]
        t: usize,
        /// Fix coboundary values, e.g. "2=1,5=0"; unlisted ones stay free.
        #[arg(long)]
        fix: Option<String>,
        /// Print only the solution count.
        #[arg(long)]
        count_only: bool,
        /// Keep only mirror-symmetric subscript sets (z only).
        #[arg(long)]
        symmetry: bool,
        /// Keep only diagrams whose first column differs in parity from the rest (z only).
        #[arg(long)]
        parity: bool,
        /// Keep only solutions with this row distribution, e.g. 2,2,2,2.
        #[arg(long, value_delimiter = ',')]
        dist: Option<Vec<usize>>,
        /// Keep only solutions with these interior column sums (z only).
        #[arg(long, value_delimiter = ',')]
        col: Option<Vec<usize>>,
        /// Opt into the experimental dihedral distribution counting.
        #[arg(long)]
        d_dist_convention: bool,
        /// One JSON object per solution instead of text lines.
        #[arg(long)]
        json: bool,
        /// Dump each solution matrix after its report line.
        #[arg(long)]
        matrix: bool,
    },
    /// Check whether one coboundary subscript set yields a Hadamard matrix.
    Verify {
        /// Family: z or d.
        #[arg(long)]
        group: Family,
        /// Order parameter; the matrix has order 4t.
        #[arg(long)]
        t: usize,
        /// Coboundary subscripts, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        cob: Vec<usize>,
        /// Report as a single JSON object without the matrix dump.
        #[arg(long)]
        json: bool,
    },
    /// Write a polynomial ideal for an external computer-algebra system.
    EmitIdeal {
        /// ig for the full cocycle ideal, jg for the reduced family system.
        #[arg(long)]
        kind: String,
        #[command(flatten)]
        which: GroupChoice,
        /// Output dialect: plain or singular.
        #[arg(long, default_value = "plain")]
        syntax: Syntax,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify every embedded published solution row.
    Tables {
        /// 2 for the abelian table, 3 for the dihedral table.
        #[arg(long)]
        which: u32,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::ResourceLimit { .. } => 3,
                _ => 2,
            }
        }
    };
    std::process::exit(code);
}

fn emit_stdout(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
}

fn budget_from_env() -> Result<Option<u32>> {
    match std::env::var("COCHAD_BUDGET") {
        Ok(s) => s
            .trim()
            .parse::<u32>()
            .map(Some)
            .map_err(|_| Error::invalid("COCHAD_BUDGET", format!("expected a base-2 exponent, got '{}'", s))),
        Err(_) => Ok(None),
    }
}

fn resolve_group(which: &GroupChoice) -> Result<GroupTable> {
    match (which.group, &which.group_file) {
        (Some(_), Some(_)) => Err(Error::invalid(
            "--group",
            "--group and --group-file are mutually exclusive",
        )),
        (Some(family), None) => {
            let t = which
                .t
                .ok_or_else(|| Error::invalid("--t", "required alongside --group"))?;
            make_group(family, t)
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::invalid("--group-file", format!("{}: {}", path.display(), e)))?;
            parse_group_table(&text)
        }
        (None, None) => Err(Error::invalid(
            "--group",
            "one of --group or --group-file is required",
        )),
    }
}

fn run(cli: Cli) -> Result<i32> {
    if cli.threads == 0 {
        return Err(Error::invalid("--threads", "must be at least 1"));
    }
    let budget = budget_from_env()?;
    match cli.command {
        Command::Enumerate { which, count_only } => {
            let g = resolve_group(&which)?;
            let opts = EnumerateOptions {
                count_only,
                budget_bits: budget.unwrap_or(EnumerateOptions::default().budget_bits),
                threads: cli.threads,
            };
            let result = enumerate_hadamard_cocycles(&g, &opts)?;
            let mut text = String::new();
            if let Some(cocycles) = &result.cocycles {
                for c in cocycles {
                    text.push_str(&c.matrix().to_text());
                    text.push('\n');
                }
            }
            text.push_str(&format!("count={}\n", result.count));
            emit_stdout(&text);
            Ok(0)
        }
        Command::Search {
            group,
            t,
            fix,
            count_only,
            symmetry,
            parity,
            dist,
            col,
            d_dist_convention,
            json,
            matrix,
        } => {
            let basis = family_basis(group, t)?;
            let mask = match fix {
                Some(spec) => FixMask::parse(&spec, basis.num_vars())?,
                None => FixMask::all_free(basis.num_vars()),
            };
            let filters = SearchFilters {
                symmetry,
                parity,
                dist_target: dist,
                col_target: col,
                d_dist_convention,
            };
            let opts = SearchOptions {
                count_only,
                threads: cli.threads,
                budget_bits: budget.unwrap_or(SearchOptions::default().budget_bits),
            };
            let found = search(&basis, &mask, &filters, &opts)?;
            let mut text = String::new();
            if count_only {
                text.push_str(&format!("count={}\n", found.count));
            } else {
                for x in &found.solutions {
                    let support = x.support();
                    if json {
                        let line = json!({
                            "family": group.as_str(),
                            "t": t,
                            "cob": support,
                            "order": 4 * t,
                        });
                        text.push_str(&format!("{}\n", line));
                    } else {
                        let subs: Vec<String> = support.iter().map(|i| i.to_string()).collect();
                        text.push_str(&format!(
                            "family={} t={} cob={{{}}}\n",
                            group.as_str(),
                            t,
                            subs.join(",")
                        ));
                    }
                    if matrix {
                        let (_, m) = verify_support(group, t, &support)?;
                        text.push_str(&m.to_text());
                        text.push('\n');
                    }
                }
            }
            emit_stdout(&text);
            eprintln!(
                "nodes={} verified={} rejected={} wall_ms={}",
                found.stats.nodes, found.stats.verified, found.stats.rejected, found.stats.wall_ms
            );
            Ok(if found.count > 0 { 0 } else { 1 })
        }
        Command::Verify { group, t, cob, json } => {
            let (ok, m) = verify_support(group, t, &cob)?;
            if json {
                let line = json!({
                    "family": group.as_str(),
                    "t": t,
                    "cob": cob,
                    "order": m.n(),
                    "hadamard": ok,
                });
                emit_stdout(&format!("{}\n", line));
            } else if ok {
                emit_stdout(&format!("HADAMARD order={}\n{}", m.n(), m.to_text()));
            } else {
                emit_stdout(&format!("NOT HADAMARD\n{}", m.to_text()));
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::EmitIdeal {
            kind,
            which,
            syntax,
            out,
        } => {
            let ideal = match kind.to_ascii_lowercase().as_str() {
                "ig" => {
                    let g = resolve_group(&which)?;
                    emit_ig(&g)
                }
                "jg" => {
                    let family = which.group.ok_or_else(|| {
                        Error::invalid("--kind", "jg needs --group z|d; it has no custom-table form")
                    })?;
                    let t = which
                        .t
                        .ok_or_else(|| Error::invalid("--t", "required alongside --group"))?;
                    let basis = family_basis(family, t)?;
                    emit_jg(&basis, &build_system(&basis))?
                }
                other => {
                    return Err(Error::invalid(
                        "--kind",
                        format!("expected 'ig' or 'jg', got '{}'", other),
                    ))
                }
            };
            let text = render(&ideal, syntax);
            match out {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Error::invalid("--out", format!("{}: {}", path.display(), e)))?,
                None => emit_stdout(&text),
            }
            Ok(0)
        }
        Command::Tables { which } => {
            let (family, rows) = match which {
                2 => (Family::Z, cochad::table2()),
                3 => (Family::D, cochad::table3()),
                other => {
                    return Err(Error::invalid(
                        "--which",
                        format!("expected 2 or 3, got {}", other),
                    ))
                }
            };
            let mut all_ok = true;
            let mut text = String::new();
            for row in &rows {
                let ok = cochad::verify_row(family, row)?;
                all_ok &= ok;
                text.push_str(&format!("t={} {}\n", row.t, if ok { "pass" } else { "FAIL" }));
            }
            emit_stdout(&text);
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}
