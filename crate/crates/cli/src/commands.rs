use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use fairsched::ef::solve_ef;
use fairsched::exact::{brute_force, enumerate_distributions, reduce_partition, Mode, PartitionInstance};
use fairsched::greedy::{lpt, solve_single_resource};
use fairsched::sca::{solve_family, Family};
use fairsched::{
    check, compute_loads, load_distribution, minimize, solve, Assignment, Error, Instance, PropertySet, Solution,
    SolverKind, Weight,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::docs::{CheckDoc, ClassDoc, EnumerateDoc, InstanceDoc, SolveDoc, Status};

/// Process exit status for a completed command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Negative = 1,
    Usage = 2,
    Refused = 3,
}

pub fn parse_property(s: &str) -> Result<PropertySet> {
    s.parse::<PropertySet>().map_err(|e| anyhow::anyhow!(e)).context("parsing --property")
}

pub struct SolveArgs {
    pub property: PropertySet,
    pub threshold: Option<Weight>,
    pub minimize: bool,
    pub cap: usize,
}

pub fn solve_cmd(doc: &InstanceDoc, args: &SolveArgs) -> Result<(SolveDoc, Exit)> {
    let instance = doc.instance()?;
    let threshold = args.threshold.or(doc.t);
    let start = Instant::now();
    let result = if args.minimize {
        minimize(args.property, &instance, args.cap)
    } else {
        solve(args.property, &instance, threshold, args.cap)
    };
    let elapsed_ns = start.elapsed().as_nanos();
    let mut out = SolveDoc {
        status: Status::Infeasible,
        property: args.property.to_string(),
        threshold: if args.minimize { None } else { threshold },
        solver: None,
        assignment: None,
        loads: None,
        makespan: None,
        elapsed_ns,
        message: None,
    };
    match result {
        Ok(solution) => {
            fill(&mut out, &solution);
            if args.minimize && threshold.is_some_and(|t| solution.makespan().is_some_and(|mk| mk > t)) {
                out.message = Some("least makespan exceeds the instance threshold".into());
            }
            let code = if out.status == Status::Found { Exit::Ok } else { Exit::Negative };
            Ok((out, code))
        }
        Err(e @ Error::EnumerationCap { .. }) => {
            out.status = Status::Refused;
            out.solver = Some(SolverKind::BruteForce.to_string());
            out.message = Some(format!("{e}; raise FAIRSCHED_ENUM_CAP to allow it"));
            Ok((out, Exit::Refused))
        }
        Err(e) => Err(e.into()),
    }
}

fn fill(out: &mut SolveDoc, solution: &Solution) {
    out.solver = Some(solution.solver.to_string());
    if let (Some(a), Some(v)) = (&solution.assignment, &solution.loads) {
        out.status = Status::Found;
        out.assignment = Some(a.to_one_based());
        out.loads = Some(v.as_slice().to_vec());
        out.makespan = Some(v.makespan());
    }
}

pub fn check_cmd(doc: &InstanceDoc, a: &Assignment, property: PropertySet) -> Result<(CheckDoc, Exit)> {
    let instance = doc.instance()?;
    let verdict = check(property, &instance, a)?;
    let loads = compute_loads(&instance, a)?;
    let out = CheckDoc {
        property: property.to_string(),
        satisfied: verdict.is_satisfied(),
        witness: verdict.witness.map(Into::into),
        makespan: loads.makespan(),
        loads: loads.into_vec(),
        distribution: load_distribution(&instance, a)?.to_string(),
    };
    let code = if out.satisfied { Exit::Ok } else { Exit::Negative };
    Ok((out, code))
}

pub fn enumerate_cmd(
    doc: &InstanceDoc,
    property: Option<PropertySet>,
    threshold: Option<Weight>,
    cap: usize,
) -> Result<EnumerateDoc> {
    let instance = doc.instance()?;
    let threshold = threshold.or(doc.t);
    let classes: Vec<ClassDoc> = match property {
        Some(p) => brute_force(p, &instance, threshold, Mode::All, cap)?
            .iter()
            .map(|c| ClassDoc::new(&c.distribution, &c.assignment))
            .collect(),
        None => enumerate_distributions(&instance, cap)?
            .filter(|c| threshold.is_none_or(|t| c.makespan() <= t))
            .map(|c| ClassDoc::new(&c.distribution, &c.assignment))
            .collect(),
    };
    Ok(EnumerateDoc {
        property: property.unwrap_or(PropertySet::TOP).to_string(),
        threshold,
        count: classes.len(),
        classes,
    })
}

pub fn reduce_cmd(values: Vec<Weight>) -> Result<InstanceDoc> {
    let p = PartitionInstance::new(values)?;
    let (instance, t) = reduce_partition(&p);
    Ok(InstanceDoc { weights: instance.weights().to_vec(), m: instance.m(), t: Some(t) })
}

#[derive(Debug, Clone)]
pub struct GenArgs {
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub min_weight: Weight,
    pub max_weight: Weight,
    /// Probability that a player copies the weight of an earlier player.
    pub dup_bias: f64,
    pub threshold: Option<Weight>,
}

pub fn gen_cmd(args: &GenArgs) -> Result<InstanceDoc> {
    if args.n == 0 || args.m == 0 {
        bail!("--n and --m must be positive");
    }
    if args.min_weight < 1 || args.min_weight > args.max_weight {
        bail!("weight range must satisfy 1 <= min <= max");
    }
    if !(0.0..=1.0).contains(&args.dup_bias) {
        bail!("--dup-bias must lie in [0, 1]");
    }
    let weights = random_weights(args);
    let doc = InstanceDoc { weights, m: args.m, t: args.threshold };
    doc.instance()?;
    Ok(doc)
}

fn random_weights(args: &GenArgs) -> Vec<Weight> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut weights: Vec<Weight> = Vec::with_capacity(args.n);
    for _ in 0..args.n {
        let w = if !weights.is_empty() && rng.gen_bool(args.dup_bias) {
            weights[rng.gen_range(0..weights.len())]
        } else {
            rng.gen_range(args.min_weight..=args.max_weight)
        };
        weights.push(w);
    }
    weights
}

/// Solvers addressable by `bench --solver`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchSolver {
    Lpt,
    Single,
    Sca(Family),
    Ef { credible: bool },
    /// The general dispatcher, including exhaustive search.
    Dispatch(PropertySet),
}

impl BenchSolver {
    /// Names like `lpt`, `single`, `sca-woe-cr`, `ef`, `ef-cr`, `solve-eq-cr`.
    pub fn parse(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        let atoms = |rest: &str| parse_property(&rest.replace('-', "+"));
        Ok(match lower.as_str() {
            "lpt" => BenchSolver::Lpt,
            "single" => BenchSolver::Single,
            "ef" => BenchSolver::Ef { credible: false },
            "ef-cr" => BenchSolver::Ef { credible: true },
            _ => {
                if let Some(rest) = lower.strip_prefix("sca-") {
                    let p = atoms(rest)?;
                    BenchSolver::Sca(Family::from_properties(p).with_context(|| format!("{p} is not an SCA family"))?)
                } else if let Some(rest) = lower.strip_prefix("solve-") {
                    BenchSolver::Dispatch(atoms(rest)?)
                } else {
                    bail!("unknown solver `{name}`; expected lpt, single, ef, ef-cr, sca-<props> or solve-<props>");
                }
            }
        })
    }

    fn run(self, instance: &Instance, threshold: Option<Weight>, cap: usize) -> Result<Option<Assignment>> {
        Ok(match self {
            BenchSolver::Lpt => Some(lpt(instance)),
            BenchSolver::Single => Some(solve_single_resource(instance)),
            BenchSolver::Sca(family) => solve_family(family, instance, threshold),
            BenchSolver::Ef { credible } => solve_ef(instance, threshold, credible).map(|x| x.0),
            BenchSolver::Dispatch(p) => solve(p, instance, threshold, cap)?.assignment,
        })
    }
}

pub struct BenchArgs {
    pub solver: BenchSolver,
    pub sizes: Vec<usize>,
    /// Resources per instance; by default one per thousand players, at least two.
    pub m: Option<usize>,
    pub seed: u64,
    pub max_weight: Weight,
    pub dup_bias: f64,
    /// Threshold as a multiple of the average load `W / m`.
    pub threshold_factor: Option<f64>,
    pub cap: usize,
}

pub fn bench_cmd(args: &BenchArgs) -> Result<String> {
    let mut csv = String::from("n,elapsed_ns,makespan,status\n");
    for &n in &args.sizes {
        let m = args.m.unwrap_or((n / 1000).max(2));
        let gen = GenArgs {
            seed: args.seed,
            n,
            m,
            min_weight: 1,
            max_weight: args.max_weight,
            dup_bias: args.dup_bias,
            threshold: None,
        };
        let instance = gen_cmd(&gen)?.instance()?;
        let threshold = args
            .threshold_factor
            .map(|f| ((instance.total_weight() as f64 / m as f64) * f).ceil() as Weight);
        let start = Instant::now();
        let outcome = args.solver.run(&instance, threshold, args.cap);
        let elapsed = start.elapsed().as_nanos();
        let (makespan, status) = match outcome {
            Ok(Some(a)) => (compute_loads(&instance, &a)?.makespan().to_string(), "found"),
            Ok(None) => (String::new(), "infeasible"),
            Err(e) if e.downcast_ref::<Error>().is_some_and(|e| matches!(e, Error::EnumerationCap { .. })) => {
                (String::new(), "refused")
            }
            Err(e) => return Err(e),
        };
        writeln!(csv, "{n},{elapsed},{makespan},{status}").expect("writing to a String");
    }
    Ok(csv)
}

/// Parses sizes like `1000`, `1e4` or `2.5e3`.
pub fn parse_size(s: &str) -> Result<usize> {
    let s = s.trim();
    if let Ok(n) = s.parse::<usize>() {
        return Ok(n);
    }
    let x: f64 = s.parse().with_context(|| format!("invalid size `{s}`"))?;
    if !(x.is_finite() && x >= 1.0 && x.fract() == 0.0) {
        bail!("invalid size `{s}`");
    }
    Ok(x as usize)
}
