//! Command-line front end: sampling, arithmetic, orders, logs, the randomized
//! self-test, a Diffie-Hellman break demo and timing benchmarks.
//!
//! Every command is deterministic given `--seed`. Plain output is meant for
//! people; structured output is one JSON record per line. Exit codes: 0
//! success, 1 invalid input, 2 non-invertible element, 3 no solution or a
//! failed check.

use std::io::Write;
use std::time::{Duration, Instant};

use clap::{Parser, ValueEnum};
use num_bigint::RandBigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::attack::ep_log;
use crate::bergman::{check_prime, parse_natural, sample_invertible, EpElement};
use crate::error::{Error, Result};
use crate::modmath::{factorize, random_prime, seeded_rng, smooth_prime, Factorization, Natural};
use crate::zp_dlog::{dlog_zp_factored, DlogOracle, OracleKind};

/// Smallest bit size routed to the constructed-smooth-prime tiers.
pub const BIG_TIER_BITS: u64 = 64;

const DEFAULT_SELFTEST_BITS: [u64; 4] = [4, 8, 16, 32];
const BIG_TIERS: [u64; 2] = [64, 128];
const DEFAULT_DH_BITS: u64 = 32;
const DEFAULT_BENCH_BITS: [u64; 3] = [8, 16, 32];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Print a uniformly random invertible element.
    Sample,
    /// Print g^n.
    Pow,
    /// Print the multiplicative order of g.
    Order,
    /// Recover x from g and h = g^x.
    Log,
    /// Randomized end-to-end check over several prime sizes.
    Selftest,
    /// Break a Diffie-Hellman style exchange over E_p.
    #[value(name = "dh-demo")]
    DhDemo,
    /// Time the attack and the Z_p solvers.
    Bench,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    /// One JSON record per line.
    Structured,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "ep-dlog", version, about = "Discrete logarithms in Bergman's ring E_p")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// The prime p.
    #[arg(long)]
    pub p: Option<String>,
    /// Base element, as a,b,c,u,v.
    #[arg(long)]
    pub g: Option<String>,
    /// Target element, as a,b,c,u,v.
    #[arg(long)]
    pub h: Option<String>,
    /// Exponent for `pow`.
    #[arg(long)]
    pub n: Option<String>,
    /// Prime sizes in bits, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub bits: Option<Vec<u64>>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    /// Z_p solver behind the attack.
    #[arg(long, value_enum, default_value_t)]
    pub oracle: OracleKind,
    /// Enable 64- and 128-bit tiers (primes with smooth p - 1).
    #[arg(long)]
    pub big_tiers: bool,
}

impl RunConfig {
    fn prime(&self) -> Result<Natural> {
        let text = self
            .p
            .as_deref()
            .ok_or_else(|| Error::InvalidInput("--p is required".into()))?;
        let p = parse_natural(text)?;
        check_prime(&p)?;
        Ok(p)
    }

    fn element(&self, p: &Natural, arg: &Option<String>, flag: &str) -> Result<EpElement> {
        let text = arg
            .as_deref()
            .ok_or_else(|| Error::InvalidInput(format!("--{flag} is required")))?;
        EpElement::parse(p, text)
    }

    fn structured(&self) -> bool {
        self.format == OutputFormat::Structured
    }
}

/// Runs one command, writing its report to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    match config.command {
        Command::Sample => cmd_sample(config, out),
        Command::Pow => cmd_pow(config, out),
        Command::Order => cmd_order(config, out),
        Command::Log => cmd_log(config, out),
        Command::Selftest => cmd_selftest(config, out),
        Command::DhDemo => cmd_dh_demo(config, out),
        Command::Bench => cmd_bench(config, out),
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, record: &T) -> Result<()> {
    let line = serde_json::to_string(record).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{line}")?;
    Ok(())
}

fn p_minus_1_factorization(p: &Natural) -> Result<Factorization> {
    factorize(&(p - 1u8))
}

fn cmd_sample(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let p = config.prime()?;
    let g = sample_invertible(&p, &mut seeded_rng(config.seed, &[]))?;
    if config.structured() {
        emit_json(out, &g.to_record())
    } else {
        writeln!(out, "{g}")?;
        Ok(())
    }
}

fn cmd_pow(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let p = config.prime()?;
    let g = config.element(&p, &config.g, "g")?;
    let n = parse_natural(
        config
            .n
            .as_deref()
            .ok_or_else(|| Error::InvalidInput("--n is required".into()))?,
    )?;
    let result = g.pow(&n);
    if config.structured() {
        emit_json(
            out,
            &json!({"p": p.to_string(), "g": g.to_string(), "n": n.to_string(), "result": result.to_string()}),
        )
    } else {
        writeln!(out, "{result}")?;
        Ok(())
    }
}

fn cmd_order(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let p = config.prime()?;
    let g = config.element(&p, &config.g, "g")?;
    let order = g.order(&p_minus_1_factorization(&p)?)?;
    if config.structured() {
        emit_json(
            out,
            &json!({"p": p.to_string(), "g": g.to_string(), "order": order.to_string()}),
        )
    } else {
        writeln!(out, "{order}")?;
        Ok(())
    }
}

#[derive(Debug, Serialize)]
struct LogRecord<'a> {
    p: String,
    g: String,
    h: String,
    #[serde(flatten)]
    transcript: &'a crate::attack::AttackTranscript,
}

fn cmd_log(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let p = config.prime()?;
    let g = config.element(&p, &config.g, "g")?;
    let h = config.element(&p, &config.h, "h")?;
    let oracle = DlogOracle::with_seed(config.oracle, config.seed);
    let transcript = ep_log(&g, &h, &oracle, &p_minus_1_factorization(&p)?)?;
    if config.structured() {
        emit_json(
            out,
            &LogRecord {
                p: p.to_string(),
                g: g.to_string(),
                h: h.to_string(),
                transcript: &transcript,
            },
        )
    } else {
        writeln!(out, "{}", transcript.x)?;
        Ok(())
    }
}

/// The prime for one size tier: random below [`BIG_TIER_BITS`], constructed
/// with smooth `p - 1` at and above it.
pub fn tier_prime(bits: u64, seed: u64) -> Result<(Natural, Factorization)> {
    let mut rng = seeded_rng(seed, &[bits]);
    if bits >= BIG_TIER_BITS {
        smooth_prime(bits, &mut rng)
    } else {
        let p = random_prime(bits, &mut rng)?;
        let fact = p_minus_1_factorization(&p)?;
        Ok((p, fact))
    }
}

fn check_tier(bits: u64, big_tiers: bool) -> Result<()> {
    if bits < 3 {
        return Err(Error::InvalidInput(format!("bit size {bits} is below 3")));
    }
    if bits >= BIG_TIER_BITS && !big_tiers {
        return Err(Error::InvalidInput(format!(
            "{bits}-bit tiers need --big-tiers"
        )));
    }
    Ok(())
}

/// Outcome of one randomized attack.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub index: u64,
    pub g: EpElement,
    pub x: Natural,
    pub h: EpElement,
    pub result: Result<crate::attack::AttackTranscript>,
    pub elapsed: Duration,
}

impl TrialOutcome {
    pub fn succeeded(&self) -> bool {
        matches!(&self.result, Ok(t) if t.x == self.x && t.zp_dlog_calls <= 2)
    }
}

/// Runs `trials` independent attacks in `E_p`: uniform invertible `g`,
/// uniform `x < ord(g)`, `h = g^x`. Trial `i` draws from its own stream, so
/// the outcomes do not depend on scheduling.
pub fn run_trials(
    p: &Natural,
    fact: &Factorization,
    trials: usize,
    seed: u64,
    kind: OracleKind,
) -> Result<Vec<TrialOutcome>> {
    let tag = p.bits();
    (0..trials as u64)
        .into_par_iter()
        .map(|index| {
            let mut rng = seeded_rng(seed, &[tag, index]);
            let g = sample_invertible(p, &mut rng)?;
            let order = g.order(fact)?;
            let x = rng.gen_biguint_below(&order);
            let h = g.pow(&x);
            let oracle = DlogOracle::with_seed(kind, seed ^ index);
            let start = Instant::now();
            let result = ep_log(&g, &h, &oracle, fact);
            let elapsed = start.elapsed();
            Ok(TrialOutcome {
                index,
                g,
                x,
                h,
                result,
                elapsed,
            })
        })
        .collect()
}

fn median(mut samples: Vec<Duration>) -> Duration {
    if samples.is_empty() {
        return Duration::ZERO;
    }
    samples.sort();
    samples[samples.len() / 2]
}

fn selftest_tiers(config: &RunConfig) -> Vec<u64> {
    let mut tiers = config
        .bits
        .clone()
        .unwrap_or_else(|| DEFAULT_SELFTEST_BITS.to_vec());
    if config.big_tiers {
        for b in BIG_TIERS {
            if !tiers.contains(&b) {
                tiers.push(b);
            }
        }
    }
    tiers
}

fn cmd_selftest(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    if config.trials == 0 {
        return Err(Error::InvalidInput("--trials must be positive".into()));
    }
    let tiers = selftest_tiers(config);
    for &bits in &tiers {
        check_tier(bits, config.big_tiers)?;
    }

    let mut all_passed = true;
    for bits in tiers {
        let (p, fact) = tier_prime(bits, config.seed)?;
        let started = Instant::now();
        let outcomes = run_trials(&p, &fact, config.trials, config.seed, config.oracle)?;
        let wall = started.elapsed();

        let successes = outcomes.iter().filter(|o| o.succeeded()).count();
        let calls: Vec<u32> = outcomes
            .iter()
            .filter_map(|o| o.result.as_ref().ok().map(|t| t.zp_dlog_calls))
            .collect();
        let max_calls = calls.iter().copied().max().unwrap_or(0);
        let min_calls = calls.iter().copied().min().unwrap_or(0);
        let med = median(outcomes.iter().map(|o| o.elapsed).collect());
        all_passed &= successes == outcomes.len();

        if config.structured() {
            emit_json(
                out,
                &json!({
                    "bits": bits,
                    "p": p.to_string(),
                    "trials": config.trials,
                    "successes": successes,
                    "min_zp_dlog_calls": min_calls,
                    "max_zp_dlog_calls": max_calls,
                }),
            )?;
        } else {
            writeln!(
                out,
                "bits={bits} p={p} trials={} successes={successes} max_zp_dlog_calls={max_calls} median_attack_us={:.1} wall_ms={:.1}",
                config.trials,
                med.as_secs_f64() * 1e6,
                wall.as_secs_f64() * 1e3,
            )?;
        }

        for o in outcomes.iter().filter(|o| !o.succeeded()) {
            let got = match &o.result {
                Ok(t) => format!("x={} calls={}", t.x, t.zp_dlog_calls),
                Err(e) => format!("error={e}"),
            };
            if config.structured() {
                emit_json(
                    out,
                    &json!({
                        "failure": true,
                        "bits": bits,
                        "p": p.to_string(),
                        "trial": o.index,
                        "g": o.g.to_string(),
                        "x": o.x.to_string(),
                        "h": o.h.to_string(),
                        "got": got,
                    }),
                )?;
            } else {
                writeln!(
                    out,
                    "FAIL bits={bits} p={p} trial={} g={} x={} h={} {got}",
                    o.index, o.g, o.x, o.h
                )?;
            }
        }
    }

    if !all_passed {
        return Err(Error::NoSolution("self-test recovered a wrong exponent".into()));
    }
    if !config.structured() {
        writeln!(out, "ALL PASSED")?;
    }
    Ok(())
}

fn cmd_dh_demo(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let bits = config
        .bits
        .as_ref()
        .and_then(|b| b.first().copied())
        .unwrap_or(DEFAULT_DH_BITS);
    check_tier(bits, config.big_tiers)?;
    let (p, fact) = tier_prime(bits, config.seed)?;
    let mut rng = seeded_rng(config.seed, &[bits, u64::MAX]);

    let g = sample_invertible(&p, &mut rng)?;
    let order = g.order(&fact)?;
    let alice_secret = rng.gen_biguint_below(&order);
    let bob_secret = rng.gen_biguint_below(&order);
    let alice_public = g.pow(&alice_secret);
    let bob_public = g.pow(&bob_secret);
    let alice_shared = bob_public.pow(&alice_secret);
    let bob_shared = alice_public.pow(&bob_secret);
    if alice_shared != bob_shared {
        return Err(Error::InternalInconsistency("honest parties disagree".into()));
    }

    let oracle = DlogOracle::with_seed(config.oracle, config.seed);
    let transcript = ep_log(&g, &alice_public, &oracle, &fact)?;
    let recovered_secret = transcript.x.clone();
    if g.pow(&recovered_secret) != alice_public {
        return Err(Error::NoSolution("recovered exponent does not reproduce g^x".into()));
    }
    let eve_shared = bob_public.pow(&recovered_secret);
    let recovered = eve_shared == alice_shared;

    if config.structured() {
        emit_json(
            out,
            &json!({
                "bits": bits,
                "p": p.to_string(),
                "g": g.to_string(),
                "alice_public": alice_public.to_string(),
                "bob_public": bob_public.to_string(),
                "shared_secret": alice_shared.to_string(),
                "recovered_exponent": recovered_secret.to_string(),
                "recovered_secret": eve_shared.to_string(),
                "zp_dlog_calls": transcript.zp_dlog_calls,
                "recovered": recovered,
            }),
        )?;
    } else {
        writeln!(out, "p            = {p} ({bits} bits)")?;
        writeln!(out, "g            = {g}  (order {order})")?;
        writeln!(out, "alice sends  = {alice_public}")?;
        writeln!(out, "bob sends    = {bob_public}")?;
        writeln!(out, "shared       = {alice_shared}")?;
        writeln!(
            out,
            "eavesdropper = {eve_shared}  (x = {recovered_secret}, {} Z_p logs)",
            transcript.zp_dlog_calls
        )?;
        writeln!(out, "{}", if recovered { "SECRET RECOVERED" } else { "RECOVERY FAILED" })?;
    }
    if !recovered {
        return Err(Error::NoSolution("eavesdropper secret differs".into()));
    }
    Ok(())
}

fn cmd_bench(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let tiers = config
        .bits
        .clone()
        .unwrap_or_else(|| DEFAULT_BENCH_BITS.to_vec());
    for &bits in &tiers {
        check_tier(bits, config.big_tiers)?;
    }
    let trials = config.trials.max(1);
    for bits in tiers {
        let (p, fact) = tier_prime(bits, config.seed)?;
        for kind in [OracleKind::Bsgs, OracleKind::PohligHellman, OracleKind::Rho] {
            let outcomes = match run_trials(&p, &fact, trials, config.seed, kind) {
                Ok(o) => o,
                Err(Error::ComponentTooLarge(_)) => continue,
                Err(e) => return Err(e),
            };
            if outcomes.iter().any(|o| matches!(o.result, Err(Error::ComponentTooLarge(_)))) {
                continue;
            }
            let failures = outcomes.iter().filter(|o| !o.succeeded()).count();
            let attack = median(outcomes.iter().map(|o| o.elapsed).collect());

            // One Z_p log per trial, on the (1,1) entries of the same instances.
            let oracle = DlogOracle::with_seed(kind, config.seed);
            let zp: Vec<Duration> = outcomes
                .iter()
                .map(|o| {
                    let start = Instant::now();
                    let _ = dlog_zp_factored(o.g.a(), o.h.a(), &p, &fact, &oracle);
                    start.elapsed()
                })
                .collect();
            let zp = median(zp);

            if config.structured() {
                emit_json(
                    out,
                    &json!({
                        "bits": bits,
                        "p": p.to_string(),
                        "oracle": kind.to_string(),
                        "trials": trials,
                        "failures": failures,
                        "median_attack_us": attack.as_secs_f64() * 1e6,
                        "median_zp_log_us": zp.as_secs_f64() * 1e6,
                    }),
                )?;
            } else {
                writeln!(
                    out,
                    "bits={bits:<4} oracle={kind:<4} trials={trials} failures={failures} median_attack_us={:>10.1} median_zp_log_us={:>10.1}",
                    attack.as_secs_f64() * 1e6,
                    zp.as_secs_f64() * 1e6,
                )?;
            }
        }
    }
    Ok(())
}
