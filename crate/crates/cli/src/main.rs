//! `sct`: simplicial construction toolkit.
//!
//! Exit status: 0 success, 1 check failure, 2 usage error, 3 input error.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::rc::Rc;

use clap::{Parser, Subcommand};

use sct_cli::formats::{
    parse_fcat, parse_fpm, parse_fps, parse_sset, serialize_fcat, serialize_sset,
};
use sct_cli::report::Report;
use sct_cli::suites::{run_suite, SuiteOptions};
use sct_core::constructions::{
    cone_with_retracts, d_filtration, dinfty, glue_free_arrows, hammock_mapping, hammock_pi0,
    localization_table, MarkedCategory,
};
use sct_core::error::Error;
use sct_core::fincat::{homotopy_category, nerve, validate_category, FinCategory, Poset};
use sct_core::presheaf::is_pure;
use sct_core::quasicat::{ex_iterate, fibrant_replace, is_quasicategory, sd_standard};
use sct_core::simpset::{inclusion_by_name, join_point, product, pushout, SimplicialSet};

#[derive(Parser)]
#[command(name = "sct", version, about = "simplicial construction toolkit")]
struct Cli {
    /// Write the primary output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Omit per-check timings from reports.
    #[arg(long, global = true)]
    no_timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nerve of a finite category, truncated.
    Nerve {
        fcat: PathBuf,
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// Pushout of two complexes along the subcomplex named by a third;
    /// legs match simplices by name.
    Pushout {
        apex: PathBuf,
        left: PathBuf,
        right: PathBuf,
    },
    /// Binary product truncated at a dimension.
    Product {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Left cone on a complex.
    Cone { k: PathBuf },
    /// Inner-horn filler report.
    Qcheck {
        x: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Small-object-argument gluing tower.
    Fibrant {
        k: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        dim: usize,
    },
    /// Homotopy category of a quasi-category.
    Ho { x: PathBuf },
    /// The marked-object replacement of a category nerve.
    Dinfty {
        fcat: PathBuf,
        #[arg(long)]
        mark: String,
        #[arg(long, default_value_t = 4)]
        dim: usize,
    },
    /// One stage of the replacement filtration, with its gluing square
    /// verified as a pushout when the stage is positive.
    Dfilt {
        fcat: PathBuf,
        #[arg(long)]
        mark: String,
        #[arg(long)]
        stage: usize,
        #[arg(long, default_value_t = 4)]
        dim: usize,
    },
    /// Glue a free arrow at every object.
    Glue { fcat: PathBuf },
    /// Cone with retractions over a poset, as a complex.
    Lcone {
        fcat: PathBuf,
        #[arg(long, default_value_t = 4)]
        dim: usize,
    },
    /// The explicit localization table of a poset.
    Ltable { fcat: PathBuf },
    /// Mapping complex census in the hammock localization.
    Hammock {
        fcat: PathBuf,
        /// Comma-separated morphism names generating the wide subcategory
        /// (identities are always included).
        #[arg(long, value_delimiter = ',')]
        wide: Vec<String>,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        max_width: usize,
    },
    /// Purity of a presheaf morphism against test families.
    Pure {
        fpm: PathBuf,
        #[arg(long, num_args = 1..)]
        tests: Vec<PathBuf>,
    },
    /// Iterated Ex with the comparison map.
    Ex {
        x: PathBuf,
        #[arg(long, default_value_t = 1)]
        iters: usize,
        #[arg(long)]
        dim: usize,
    },
    /// Subdivided standard simplex.
    Sd {
        #[arg(long)]
        n: usize,
    },
    /// Run a named verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value = "builtin")]
        corpus: String,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parameter(format!("cannot read {}: {e}", path.display())))
}

fn load_sset(path: &Path) -> Result<SimplicialSet, Error> {
    parse_sset(&read(path)?)
}

fn load_fcat(path: &Path) -> Result<FinCategory, Error> {
    parse_fcat(&read(path)?)
}

/// Reconstructs a poset from a category presentation with at most one
/// non-identity morphism per hom-set.
fn category_as_poset(c: &FinCategory) -> Result<Poset, Error> {
    let n = c.object_count();
    let elements: Vec<String> = c.objects().map(|o| c.object_name(o).to_string()).collect();
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for a in c.objects() {
        for b in c.objects() {
            let hom = c.hom(a, b);
            let non_id: Vec<_> = hom.iter().filter(|&&m| !c.is_identity(m)).collect();
            if non_id.len() > 1 {
                return Err(Error::Parameter(format!(
                    "hom({}, {}) has {} morphisms; not a poset",
                    c.object_name(a),
                    c.object_name(b),
                    hom.len()
                )));
            }
            if !non_id.is_empty() {
                leq[a.0 as usize][b.0 as usize] = true;
            }
        }
    }
    Poset::from_matrix(elements, leq)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parameter(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let out = cli.out.clone();
    match cli.command {
        Command::Nerve { fcat, dim } => {
            let c = load_fcat(&fcat)?;
            emit(&out, &serialize_sset(&nerve(&c, dim)?))?;
        }
        Command::Pushout { apex, left, right } => {
            let a = load_sset(&apex)?;
            let b = load_sset(&left)?;
            let c = load_sset(&right)?;
            let f = inclusion_by_name(&a, &b)?;
            let g = inclusion_by_name(&a, &c)?;
            emit(&out, &serialize_sset(&pushout(&f, &g)?.object))?;
        }
        Command::Product { x, y, dim } => {
            let xs = load_sset(&x)?;
            let ys = load_sset(&y)?;
            emit(&out, &serialize_sset(&product(&xs, &ys, dim)?))?;
        }
        Command::Cone { k } => {
            let ks = load_sset(&k)?;
            emit(&out, &serialize_sset(&join_point(&ks)?))?;
        }
        Command::Qcheck { x, dim } => {
            let xs = load_sset(&x)?;
            let rep = is_quasicategory(&xs, dim)?;
            let mut text = String::new();
            for chk in &rep.checks {
                text.push_str(&format!(
                    "horn {} index {}: {} maps, fillers {}..{}{}\n",
                    chk.dim,
                    chk.index,
                    chk.horn_maps,
                    chk.min_fillers,
                    chk.max_fillers,
                    if chk.unfilled.is_empty() {
                        String::new()
                    } else {
                        format!(", unfilled: {}", chk.unfilled.join(" "))
                    }
                ));
            }
            text.push_str(if rep.passed() { "PASS\n" } else { "FAIL\n" });
            emit(&out, &text)?;
            return Ok(rep.passed());
        }
        Command::Fibrant { k, steps, dim } => {
            let ks = load_sset(&k)?;
            let (result, _, trace) = fibrant_replace(&ks, steps, dim)?;
            let mut text = serialize_sset(&result);
            for (stage, glued) in trace.glued.iter().enumerate() {
                text.push_str(&format!("# stage {stage}: {} horns glued\n", glued.len()));
            }
            emit(&out, &text)?;
        }
        Command::Ho { x } => {
            let xs = load_sset(&x)?;
            emit(&out, &serialize_fcat(&homotopy_category(&xs)?))?;
        }
        Command::Dinfty { fcat, mark, dim } => {
            let c = load_fcat(&fcat)?;
            let m = MarkedCategory::new(c, &mark)?;
            emit(&out, &serialize_sset(&dinfty(&m, dim)?))?;
        }
        Command::Dfilt {
            fcat,
            mark,
            stage,
            dim,
        } => {
            let c = load_fcat(&fcat)?;
            let m = MarkedCategory::new(c, &mark)?;
            let f = d_filtration(&m, stage, dim)?;
            let mut text = serialize_sset(&f.stage);
            if let Some(sq) = &f.square {
                sct_core::constructions::dinfty::verify_filtration_square(sq)?;
                text.push_str(&format!(
                    "# gluing square over {} copies verified as a pushout\n",
                    sq.labels.len()
                ));
            }
            emit(&out, &text)?;
        }
        Command::Glue { fcat } => {
            let c = load_fcat(&fcat)?;
            emit(&out, &serialize_fcat(&glue_free_arrows(&c)?))?;
        }
        Command::Lcone { fcat, dim } => {
            let c = load_fcat(&fcat)?;
            let p = category_as_poset(&c)?;
            emit(&out, &serialize_sset(&cone_with_retracts(&p, dim)?))?;
        }
        Command::Ltable { fcat } => {
            let c = load_fcat(&fcat)?;
            let p = category_as_poset(&c)?;
            let t = localization_table(&p)?;
            let v = validate_category(&t);
            if !v.is_valid() {
                return Err(Error::Table(format!("{v:?}")));
            }
            emit(&out, &serialize_fcat(&t))?;
        }
        Command::Hammock {
            fcat,
            wide,
            from,
            to,
            max_len,
            max_width,
        } => {
            let c = load_fcat(&fcat)?;
            let mut w: BTreeSet<_> = c.morphisms().filter(|&m| c.is_identity(m)).collect();
            for name in &wide {
                let m = c
                    .lookup_morphism(name)
                    .ok_or_else(|| Error::Parameter(format!("unknown morphism {name}")))?;
                w.insert(m);
            }
            let fo = c
                .lookup_object(&from)
                .ok_or_else(|| Error::Parameter(format!("unknown object {from}")))?;
            let to_o = c
                .lookup_object(&to)
                .ok_or_else(|| Error::Parameter(format!("unknown object {to}")))?;
            let hc = hammock_mapping(&c, &w, fo, to_o, max_len, max_width)?;
            let pi0 = hammock_pi0(&hc)?;
            let mut text = String::new();
            for (width, cells) in hc.cells.iter().enumerate() {
                text.push_str(&format!("width {width}: {} reduced hammocks\n", cells.len()));
            }
            text.push_str(&format!(
                "components within bounds (len <= {max_len}, width <= {max_width}): {}\n",
                pi0.len()
            ));
            emit(&out, &text)?;
        }
        Command::Pure { fpm, tests } => {
            let dir = fpm
                .parent()
                .map(Path::to_path_buf)
                .unwrap_or_else(|| PathBuf::from("."));
            let (m, src, dst) = parse_fpm(&read(&fpm)?, &dir)?;
            let mut families = Vec::new();
            for t in &tests {
                let tdir = t
                    .parent()
                    .map(Path::to_path_buf)
                    .unwrap_or_else(|| PathBuf::from("."));
                let (p, _) = parse_fps(&read(t)?, &tdir)?;
                // Rebuild over the shared base so component layouts align.
                let p = sct_core::presheaf::FinPresheaf::new(
                    p.name.clone(),
                    Rc::clone(&src.base),
                    p.values.clone(),
                    p.actions.clone(),
                )?;
                families.push(p);
            }
            let verdict = is_pure(&m, &src, &dst, &families)?;
            match verdict {
                None => {
                    emit(&out, "pure\n")?;
                }
                Some(w) => {
                    emit(
                        &out,
                        &format!(
                            "not pure: square from {} to {} has no filler\n",
                            w.test_src, w.test_dst
                        ),
                    )?;
                    return Ok(false);
                }
            }
        }
        Command::Ex { x, iters, dim } => {
            let xs = load_sset(&x)?;
            let (result, comparison) = ex_iterate(&xs, iters, dim)?;
            comparison.validate()?;
            emit(&out, &serialize_sset(&result))?;
        }
        Command::Sd { n } => {
            emit(&out, &serialize_sset(&sd_standard(n)?.sset))?;
        }
        Command::Verify {
            suite,
            corpus,
            dim,
            max_size,
        } => {
            let opts = SuiteOptions {
                corpus,
                dim,
                max_size,
                seed: 0x5eed,
            };
            let report: Report = run_suite(&suite, &opts)?;
            emit(&out, &report.render(!cli.no_timings))?;
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    return ExitCode::from(0);
                }
                _ => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            }
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
