use crate::cache::Cache;
use crate::RunConfig;
use clap::{Args, Subcommand};
use foldlab_core::acceptance::{run_all, run_criterion, CRITERIA};
use foldlab_core::folding::{classify_isogeny, fold, jantzen_partner, parse_perm, validate_automorphism};
use foldlab_core::gaudin::{run_spectrum, SpectrumStatus};
use foldlab_core::invariants::{folded_pair, invariants_report, mf_report, sigma_section_check};
use foldlab_core::opers::{gauge_reduce, lambda_residue_check, residue, OperConnection};
use foldlab_core::rational::{self, Q};
use foldlab_core::realization::realization;
use foldlab_core::reps::{construct_module, freudenthal, is_sigma_invariant, twining_report};
use foldlab_core::rootdata::{build_root_datum, Isogeny, RootDatum, Series};
use foldlab_core::tensor_maps::{lr_coefficients, nonmonoidality_witness, parse_parts, Partition};
use foldlab_core::{invariants, Error, Result};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct DatumArgs {
    #[arg(long = "type")]
    pub series: String,
    #[arg(long)]
    pub rank: usize,
    #[arg(long, default_value = "sc")]
    pub isogeny: String,
    /// 1-based node permutation, e.g. "3,2,1".
    #[arg(long)]
    pub perm: String,
}

#[derive(Args, Debug)]
pub struct FoldArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
    /// `group` folds X itself; `dual` gives the partner in the twining formula.
    #[arg(long, default_value = "group")]
    pub side: String,
}

#[derive(Args, Debug)]
pub struct TwiningArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
    /// Highest weight in fundamental coordinates.
    #[arg(long)]
    pub weight: String,
}

#[derive(Args, Debug)]
pub struct LrArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub lhs: String,
    #[arg(long)]
    pub rhs: String,
}

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    #[arg(long)]
    pub algebra: String,
}

#[derive(Args, Debug)]
pub struct MfArgs {
    #[arg(long)]
    pub algebra: String,
    /// Full coordinates, Cartan coordinates, or matrix diagonal.
    #[arg(long, allow_hyphen_values = true)]
    pub chi: String,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    /// `parent:child`, e.g. sl4:sp4.
    #[arg(long)]
    pub pair: String,
}

#[derive(Subcommand, Debug)]
pub enum OperCommand {
    /// Canonical form of a regular oper read from a JSON file.
    Reduce {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Residue of an oper with a pole, or the check for pi(-lambda-rho).
    Residue {
        #[arg(long)]
        algebra: String,
        #[arg(long, conflicts_with = "lambda", required_unless_present = "lambda")]
        input: Option<PathBuf>,
        #[arg(long)]
        lambda: Option<String>,
    },
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub algebra: String,
    /// Highest weight in fundamental coordinates.
    #[arg(long)]
    pub weight: String,
    /// Defaults to a seeded regular element, sigma-fixed when `--sigma` is given.
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<String>,
    /// 1-based diagram automorphism; must be the one carried by the algebra.
    #[arg(long)]
    pub sigma: Option<String>,
}

#[derive(Args, Debug)]
pub struct AcceptArgs {
    /// Run a single criterion.
    #[arg(long)]
    pub only: Option<u8>,
}

fn ints(s: &str) -> Result<Vec<i64>> {
    parse_parts(s)
}

fn rationals(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(|t| rational::parse(t).ok_or_else(|| Error::invalid(format!("bad rational {t:?}")))).collect()
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn datum(a: &DatumArgs) -> Result<(RootDatum, Isogeny)> {
    let iso = Isogeny::parse(&a.isogeny)?;
    Ok((build_root_datum(Series::parse(&a.series)?, a.rank, iso)?, iso))
}

fn code(pass: bool) -> u8 {
    if pass {
        0
    } else {
        1
    }
}

/// Runs one subcommand; returns the JSON output and the exit code.
pub fn run(cmd: crate::Command, cfg: &RunConfig, cache: &Cache) -> Result<(Value, u8)> {
    use crate::Command::*;
    match cmd {
        Fold(a) => {
            let (d, _) = datum(&a.datum)?;
            let s = validate_automorphism(&parse_perm(&a.datum.perm)?, &d)?;
            let f = match a.side.as_str() {
                "group" => fold(&d, &s)?,
                "dual" => jantzen_partner(&d, &s)?,
                other => return Err(Error::invalid(format!("side must be group or dual, got {other:?}"))),
            };
            let out = json!({
                "parent": to_value(&f.parent),
                "sigma": s.labels(),
                "side": to_value(&f.side),
                "orbits": to_value(&f.orbits),
                "folded": to_value(&f.datum),
                "isogeny": to_value(&classify_isogeny(&f.datum)),
            });
            Ok((out, 0))
        }
        Twining(a) => {
            let (d, iso) = datum(&a.datum)?;
            let s = validate_automorphism(&parse_perm(&a.datum.perm)?, &d)?;
            let m = ints(&a.weight)?;
            let coords = d.from_fundamental(&m).ok_or_else(|| Error::invalid("weight is not in the character lattice"))?;
            let lam = d.weight(coords);
            if !is_sigma_invariant(&d, &s, &lam) {
                return Err(Error::invalid("the highest weight is not sigma-invariant"));
            }
            let iso_key = serde_json::to_string(&iso).expect("isogeny serializes");
            let module_key = format!("module/{}/{}/{}/{}", a.datum.series.to_ascii_uppercase(), a.datum.rank, iso_key, a.weight);
            let (diagram, _) = cache.get_or_compute(&module_key, || freudenthal(&d, &lam).map(|x| to_value(&x)))?;
            let twining_key = format!("twining/{module_key}/{:?}/{}", s.perm, cfg.dimension_cap);
            let (report, _) = cache.get_or_compute(&twining_key, || -> Result<Value> {
                let p = jantzen_partner(&d, &s)?;
                let module = construct_module(&d, &lam, cfg.dimension_cap)?;
                Ok(to_value(&twining_report(&module, &s, &p)?))
            })?;
            let pass = report["pass"].as_bool() == Some(true);
            Ok((json!({ "module": diagram, "twining": report }), code(pass)))
        }
        Lr(a) => {
            let lhs = Partition::new(&ints(&a.lhs)?)?;
            let rhs = Partition::new(&ints(&a.rhs)?)?;
            let lr = lr_coefficients(&lhs, &rhs, a.n)?;
            let map: serde_json::Map<String, Value> = lr
                .iter()
                .map(|(nu, c)| (nu.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","), Value::from(*c)))
                .collect();
            Ok((Value::Object(map), 0))
        }
        WitnessNonmonoidal => {
            let w = nonmonoidality_witness()?;
            Ok((to_value(&w), code(w.pass)))
        }
        Invariants(a) => {
            let r = invariants_report(&realization(&a.algebra)?)?;
            Ok((to_value(&r), code(r.pass)))
        }
        Mf(a) => {
            let g = realization(&a.algebra)?;
            let chi = g.parse_element(&rationals(&a.chi)?)?;
            let r = mf_report(&g, &chi, cfg.seed)?;
            let independent = r.jacobian_rank == r.count && r.count == r.dim_b;
            let mut v = to_value(&r);
            v["independent"] = Value::from(independent);
            // a rank drop is expected away from the regular locus
            Ok((v, code(independent || !r.chi_regular)))
        }
        SectionCheck(a) => {
            let r = sigma_section_check(&folded_pair(&a.pair)?)?.report;
            Ok((to_value(&r), code(r.pass)))
        }
        Oper(OperCommand::Reduce { algebra, input }) => {
            let g = realization(&algebra)?;
            let c = read_connection(&input, &g.name)?;
            let s = invariants::principal_triple(&g)?;
            Ok((to_value(&gauge_reduce(&g, &s, &c, cfg.order)?), 0))
        }
        Oper(OperCommand::Residue { algebra, input, lambda }) => {
            let g = realization(&algebra)?;
            if let Some(l) = lambda {
                let r = lambda_residue_check(&g, &ints(&l)?)?;
                return Ok((to_value(&r), code(r.pass)));
            }
            let c = read_connection(&input.expect("required by clap"), &g.name)?;
            let gens = invariants::chevalley_generators(&g)?;
            Ok((to_value(&residue(&g, &gens, &c)?), 0))
        }
        Spectrum(a) => {
            let g = realization(&a.algebra)?;
            let lambda = ints(&a.weight)?;
            if lambda.len() != g.rank {
                return Err(Error::invalid(format!("{} needs {} weight coordinates", g.name, g.rank)));
            }
            let with_sigma = match &a.sigma {
                None => false,
                Some(p) => {
                    let perm = parse_perm(p)?;
                    let carried = g.sigma.as_ref().map(|s| s.automorphism.perm.clone());
                    if (0..g.rank).eq(perm.iter().copied()) {
                        false
                    } else if carried.as_ref() == Some(&perm) {
                        true
                    } else {
                        return Err(Error::invalid(format!("{} carries no automorphism {p:?}", g.name)));
                    }
                }
            };
            let chi = a.chi.as_deref().map(|c| rationals(c).and_then(|v| g.parse_element(&v))).transpose()?;
            let run = run_spectrum(&g, &lambda, chi, with_sigma, cfg.seed, cfg.dimension_cap)?;
            let exit = match (&run.spectrum.status, &run.sigma) {
                (SpectrumStatus::Inconclusive, _) => 2,
                (SpectrumStatus::NotSimple, _) => 1,
                (SpectrumStatus::Simple, Some(s)) => code(s.pass),
                (SpectrumStatus::Simple, None) => 0,
            };
            let mut v = json!({ "spectrum": to_value(&run.spectrum) });
            if let Some(s) = &run.sigma {
                v["sigma"] = to_value(s);
            }
            Ok((v, exit))
        }
        Accept(a) => {
            let results = match a.only {
                Some(id) => vec![run_criterion(id, cfg.seed).ok_or_else(|| Error::invalid(format!("no criterion {id}; valid ids are 1..={}", CRITERIA.len())))?],
                None => run_all(cfg.seed),
            };
            let pass = results.iter().all(|r| r.pass);
            for r in &results {
                eprintln!("{} criterion {:>2}: {} ({:.2}s)", if r.pass { "PASS" } else { "FAIL" }, r.id, r.title, r.seconds);
            }
            Ok((json!({ "seed": cfg.seed, "pass": pass, "criteria": to_value(&results) }), code(pass)))
        }
    }
}

fn read_connection(path: &PathBuf, algebra: &str) -> Result<OperConnection> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    let c: OperConnection = serde_json::from_str(&text).map_err(|e| Error::invalid(format!("bad connection JSON: {e}")))?;
    if c.algebra.to_ascii_lowercase() != algebra {
        return Err(Error::invalid(format!("connection is for {}, not {algebra}", c.algebra)));
    }
    Ok(c)
}
