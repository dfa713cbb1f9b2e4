//! `tangentlab`: loads category, pseudofunctor, tangent and algebra
//! documents, runs the verification suites and prints a report.
//!
//! Exit codes: 0 all checks pass, 1 some check fails, 2 malformed input,
//! 3 step budget exhausted.

mod demo;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use output::Output;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tangentlab::catcore::verify_category;
use tangentlab::io::{Loader, TabulatedPc};
use tangentlab::pc::{pc_category, validate_object};
use tangentlab::pseudo::verify_pseudofunctor;
use tangentlab::tangent::{
    pc_tangent_structure, verify_indexing_functor, verify_projection_strictness, verify_t2_agreement, verify_tangent_structure,
};
use tangentlab::zariski::{
    check_affine_lemmas, check_pseudonaturality, check_ring_coherences, set_step_budget, zariski_samples, zariski_tangent,
    AlgebraHom, Cospan, QAlg, QHom, ZariskiCategory,
};
use tangentlab::{CatError, Result, VerificationReport};

#[derive(Parser)]
#[command(name = "tangentlab", version, about = "Verify tangent categories, pseudolimits and affine tangent structures")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Gröbner step budget; overrides TANGENTLAB_BUDGET.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Sample document restricting or supplying the checked objects and morphisms.
    #[arg(long, global = true)]
    samples: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Unit and associativity laws of a finite category.
    CheckCategory { file: PathBuf },
    /// Pseudofunctor coherence.
    CheckPseudofunctor { file: PathBuf },
    /// Enumerates PC(F), or validates one pseudocone object with --object.
    BuildPc {
        file: PathBuf,
        #[arg(long)]
        object: Option<PathBuf>,
    },
    /// Tangent category axioms on a finite category.
    CheckTangent { file: PathBuf },
    /// Tangent indexing functor axioms.
    CheckIndexing { file: PathBuf },
    /// Builds and verifies the tangent structure on PC(F).
    PcTangent { file: PathBuf },
    /// Affine schemes over presented ℚ-algebras.
    #[command(subcommand)]
    Zariski(Zariski),
    /// Bundled examples.
    Demo {
        #[arg(value_enum)]
        name: demo::DemoName,
        /// Run every suite that applies to the example.
        #[arg(long)]
        check_all: bool,
        /// Write the example's documents into this directory.
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Zariski {
    /// Base-change lemmas for `A ← C → B`.
    Lemmas {
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long = "B")]
        b: PathBuf,
        #[arg(long = "C")]
        c: PathBuf,
        /// `C → A`; defaults to matching generator names.
        #[arg(long)]
        leg_a: Option<PathBuf>,
        /// `C → B`; defaults to matching generator names.
        #[arg(long)]
        leg_b: Option<PathBuf>,
    },
    /// Pseudonaturality of θ along `C →g B →f A` at `D` over `C`.
    Pseudonat {
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long = "B")]
        b: PathBuf,
        #[arg(long = "C")]
        c: PathBuf,
        #[arg(long = "D")]
        d: PathBuf,
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long)]
        g: Option<PathBuf>,
    },
    /// Ring coherences and the tangent axioms on samples over the algebra's base.
    Tangent { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(b) = cli.budget {
        set_step_budget(b);
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format == Format::Json));
            ExitCode::from(if out.report.passed() { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CatError::Budget(_) => 3,
                _ => 2,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let mut ld = Loader::new();
    let samples = cli.samples.as_deref();
    match &cli.command {
        Command::CheckCategory { file } => {
            let c = ld.category_file(file)?;
            let s = samples.map(|p| ld.samples(p, &c)).transpose()?;
            Ok(Output::report(verify_category(&*c, s.as_ref())?))
        }
        Command::CheckPseudofunctor { file } => {
            let pf = ld.pseudofunctor_file(file)?;
            let s = samples.map(|p| ld.fibre_samples(p, &pf)).transpose()?;
            Ok(Output::report(verify_pseudofunctor(&pf, s.as_ref())?))
        }
        Command::BuildPc { file, object } => {
            let pf = ld.pseudofunctor_file(file)?;
            let pc = pc_category(pf.clone());
            if let Some(o) = object {
                let a = ld.pseudocone(&pc, o)?;
                return Ok(Output::report(validate_object(&pf, &a)?));
            }
            let tab = TabulatedPc::new(&pc)?;
            let report = verify_category(&tab.category, None)?;
            Ok(Output::report(report)
                .summary(format!("PC(F): {} objects, {} morphisms", tab.objects.len(), tab.morphisms.len()))
                .artifact(tab.to_json(&pc)))
        }
        Command::CheckTangent { file } => {
            let ts = ld.tangent_file(file)?;
            let s = samples.map(|p| ld.samples(p, &ts.carrier)).transpose()?;
            Ok(Output::report(verify_tangent_structure(&ts, s.as_ref())?))
        }
        Command::CheckIndexing { file } => {
            let ix = ld.indexing_file(file)?;
            let s = samples.map(|p| ld.fibre_samples(p, &ix.pf)).transpose()?;
            Ok(Output::report(verify_indexing_functor(&ix, s.as_ref())?))
        }
        Command::PcTangent { file } => {
            let ix = ld.indexing_file(file)?;
            let mut report = VerificationReport::new(format!("tangent structure on PC({})", ix.pf.name));
            report.absorb("indexing", verify_indexing_functor(&ix, None)?);
            let pc = pc_category(ix.pf.clone());
            let ts = std::sync::Arc::new(pc_tangent_structure(&ix, &pc)?);
            report.absorb("pc", verify_tangent_structure(&ts, None)?);
            report.absorb("pc", verify_t2_agreement(&ix, &ts, None)?);
            report.absorb("pc", verify_projection_strictness(&ix, &ts, None)?);
            let tab = TabulatedPc::new(&pc)?;
            let doc = tab.tangent_doc(&ts)?;
            let artifact = serde_json::json!({"pc": tab.to_json(&pc), "tangent": doc});
            Ok(Output::report(report)
                .summary(format!("PC(F): {} objects, {} morphisms", tab.objects.len(), tab.morphisms.len()))
                .artifact(artifact))
        }
        Command::Zariski(z) => zariski(z, &mut ld, samples),
        Command::Demo { name, check_all, write } => demo::run(*name, *check_all, write.as_deref()),
    }
}

fn hom_or_matching(ld: &Loader, path: Option<&PathBuf>, src: &QAlg, tgt: &QAlg) -> Result<QHom> {
    match path {
        Some(p) => ld.hom_file(p, src, tgt),
        None => AlgebraHom::parse(src.clone(), tgt.clone(), &[]),
    }
}

fn zariski(z: &Zariski, ld: &mut Loader, samples: Option<&Path>) -> Result<Output> {
    match z {
        Zariski::Lemmas { a, b, c, leg_a, leg_b } => {
            let (a, b, c) = (ld.algebra_file(a)?, ld.algebra_file(b)?, ld.algebra_file(c)?);
            let la = hom_or_matching(ld, leg_a.as_ref(), &c, &a)?;
            let lb = hom_or_matching(ld, leg_b.as_ref(), &c, &b)?;
            Ok(Output::report(check_affine_lemmas(&Cospan::new(la, lb)?)?))
        }
        Zariski::Pseudonat { a, b, c, d, f, g } => {
            let (a, b, c, d) = (ld.algebra_file(a)?, ld.algebra_file(b)?, ld.algebra_file(c)?, ld.algebra_file(d)?);
            let g = hom_or_matching(ld, g.as_ref(), &c, &b)?;
            let f = hom_or_matching(ld, f.as_ref(), &b, &a)?;
            Ok(Output::report(check_pseudonaturality(&g, &f, &d)?))
        }
        Zariski::Tangent { file } => {
            let alg = ld.algebra_file(file)?;
            let mut report = VerificationReport::new(format!("affine tangent structure at {alg}"));
            report.absorb("ring", check_ring_coherences(&alg)?);
            let (mut objects, mut morphisms) = (vec![alg.clone()], vec![AlgebraHom::identity(&alg)]);
            if let Some(p) = samples {
                let (o, m) = ld.algebra_samples(p)?;
                objects.extend(o);
                morphisms.extend(m);
            }
            let carrier = ZariskiCategory::new(alg.base_or_ground());
            let s = zariski_samples(vec![objects], vec![morphisms]).remove(0);
            report.absorb("scheme", verify_tangent_structure(&zariski_tangent(carrier), Some(&s))?);
            Ok(Output::report(report))
        }
    }
}
