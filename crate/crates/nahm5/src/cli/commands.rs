use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::battery::{self, Job};
use super::report::Table;
use super::{Command, IntegrateArgs, MethodArg, NahmCommand};
use crate::algebra::{Matrix, C64, Q};
use crate::nahm::{self, Method, NahmState, ResidueTriple};
use crate::rng;
use crate::{Error, Result};

pub const MAX_K: usize = 64;

/// Validated settings for a flow run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub k: usize,
    pub z0: f64,
    pub z1: f64,
    pub method: Method,
    pub seed: u64,
    pub init: Option<NahmState>,
    pub csv: Option<PathBuf>,
    pub state: Option<PathBuf>,
    pub sample_every: usize,
}

fn check_k(k: usize) -> Result<()> {
    if !(1..=MAX_K).contains(&k) {
        return Err(Error::Config(format!("k = {k} outside 1..={MAX_K}")));
    }
    Ok(())
}

impl RunConfig {
    pub fn from_args(a: &IntegrateArgs) -> Result<Self> {
        let init = match &a.init {
            Some(p) => Some(read_json::<NahmState>(p)?),
            None => None,
        };
        let (k, z0) = match &init {
            Some(s) => (s.k(), s.z),
            None => (a.k.ok_or_else(|| Error::Config("--k or --init is required".into()))?, a.z0),
        };
        let method = match a.method {
            MethodArg::Rk4 => Method::Rk4 { step: a.step },
            MethodArg::Rk45 => Method::Rk45 { tol: a.tol, initial_step: a.step },
        };
        let c = Self {
            k,
            z0,
            z1: a.z1,
            method,
            seed: a.seed,
            init,
            csv: a.csv.clone(),
            state: a.state.clone(),
            sample_every: a.sample_every,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        check_k(self.k)?;
        if !(0.0 < self.z0 && self.z0 < self.z1 && self.z1 < 2.0) {
            return Err(Error::Config(format!("need 0 < z0 < z1 < 2, got z0 = {}, z1 = {}", self.z0, self.z1)));
        }
        let step = match self.method {
            Method::Rk4 { step } => step,
            Method::Rk45 { tol, initial_step } => {
                if !(tol > 0.0) {
                    return Err(Error::Config(format!("tol = {tol} must be positive")));
                }
                initial_step
            }
        };
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::Config(format!("step = {step} must be positive")));
        }
        if self.sample_every == 0 {
            return Err(Error::Config("sample-every must be at least 1".into()));
        }
        Ok(())
    }

    pub fn initial_state(&self) -> NahmState {
        self.init.clone().unwrap_or_else(|| {
            let mut r = rng::named(self.seed, "integrate");
            NahmState::random(&mut r, self.z0, self.k)
        })
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(p: &Path) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(p)?)?)
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

/// Worker pool capped by NAHM5_THREADS when set.
pub fn pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("NAHM5_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|n| *n >= 1)
            .ok_or_else(|| Error::Config(format!("NAHM5_THREADS = {v:?} is not a positive integer")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::Config(e.to_string()))
}

fn run_table(name: &str, jobs: Vec<Job>) -> Result<bool> {
    let reports = battery::run_jobs(&pool()?, jobs);
    let t = Table::new(name, reports);
    print_json(&t)?;
    Ok(t.pass)
}

/// Ok(pass) or an error (usage errors are Config / OutOfRange).
pub fn run_command(c: &Command) -> Result<bool> {
    match c {
        Command::TwistorCheck { seed, samples } => {
            if *samples == 0 {
                return Err(Error::Config("samples must be positive".into()));
            }
            run_table("twistor-check", battery::twistor_battery(*seed, *samples))
        }
        Command::BundleCheck { a, b, c, samples, seed } => {
            if *samples == 0 {
                return Err(Error::Config("samples must be positive".into()));
            }
            if *a == 0.0 && *b == 0.0 && *c == 0.0 {
                return Err(Error::Config("(a, b, c) = (0, 0, 0) is the trivial bundle".into()));
            }
            run_table("bundle-check", battery::bundle_battery(&[(*a, *b, *c)], *seed, *samples))
        }
        Command::Identities { max_m } => run_table("identities", battery::identity_battery(*max_m)),
        Command::VerifyAll { max_k, seed } => {
            check_k(*max_k)?;
            let mut jobs = battery::nahm_battery(*max_k, *seed);
            jobs.extend(battery::twistor_battery(*seed, 100));
            jobs.extend(battery::bundle_battery(&battery::STANDARD_TRIPLES, *seed, 50));
            jobs.extend(battery::identity_battery(10));
            run_table("verify-all", jobs)
        }
        Command::Nahm { action } => match action {
            NahmCommand::Integrate(a) => integrate_cmd(&RunConfig::from_args(a)?),
            NahmCommand::Residues { k } => {
                check_k(*k)?;
                let t = nahm::residue_triple::<Q>(*k);
                let cert = nahm::certify_boundary(&t);
                let c = t.to_c64();
                print_json(&serde_json::json!({
                    "k": k,
                    "r0": c.r0,
                    "r2": c.r2,
                    "r4": c.r4,
                    "certificate": cert,
                }))?;
                Ok(cert.pass)
            }
            NahmCommand::Certify { input } => {
                let f: TripleFile = read_json(input)?;
                let k = f.r0.rows();
                for m in [&f.r0, &f.r2, &f.r4] {
                    if m.rows() != k || m.cols() != k {
                        return Err(Error::Dimension("r0, r2, r4 must be square of one size".into()));
                    }
                }
                let cert = nahm::certify_boundary(&ResidueTriple { r0: f.r0, r2: f.r2, r4: f.r4 });
                print_json(&cert)?;
                Ok(cert.pass)
            }
        },
    }
}

#[derive(Deserialize)]
struct TripleFile {
    r0: Matrix<C64>,
    r2: Matrix<C64>,
    r4: Matrix<C64>,
}

fn integrate_cmd(c: &RunConfig) -> Result<bool> {
    let s0 = c.initial_state();
    let traj = nahm::integrate(&s0, c.z1, c.method, c.sample_every)?;
    let drift = traj.drift_series();
    let write_csv = |w: &mut dyn Write| -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["z", "drift"])?;
        for (z, d) in &drift {
            wr.serialize((z, d))?;
        }
        wr.flush()?;
        Ok(())
    };
    let last = traj.last();
    match &c.csv {
        Some(p) => {
            write_csv(&mut fs::File::create(p)?)?;
            print_json(&last)?;
        }
        None => write_csv(&mut std::io::stdout().lock())?,
    }
    if let Some(p) = &c.state {
        fs::write(p, serde_json::to_string_pretty(&last)?)?;
    }
    Ok(traj.degree_violations() == 0)
}
