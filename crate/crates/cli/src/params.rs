use clap::Args;

use sparseapprox::instances::{
    gen_example1, gen_example2, gen_example3, gen_prop13, gen_prop14, gen_prop15, gen_random, Family, InstanceSpec,
};
use sparseapprox::Budget;

use crate::Failure;

const FAMILIES: [Family; 8] = [
    Family::Example1,
    Family::Example2,
    Family::Example3BadBasis,
    Family::Prop13,
    Family::Prop14,
    Family::Prop15,
    Family::RandomLattice,
    Family::RandomSimplicial,
];

pub fn parse_family(s: &str) -> Result<Family, String> {
    FAMILIES
        .into_iter()
        .find(|f| f.to_string() == s || (s == "example3" && *f == Family::Example3BadBasis))
        .ok_or_else(|| {
            let names: Vec<String> = FAMILIES.iter().map(|f| f.to_string()).collect();
            format!("unknown family {s:?}; expected one of {}", names.join(", "))
        })
}

/// Generator parameters. List-valued flags take `a..b` (inclusive) or a
/// comma-separated list; a sweep is the product of all lists given.
#[derive(Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub n: Option<String>,
    /// Sparsity levels. Generator parameter for prop13, a row filter otherwise.
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long)]
    pub l: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    /// Increasing primes, comma separated.
    #[arg(long)]
    pub primes: Option<String>,
    #[arg(long)]
    pub entry_bound: Option<u32>,
    #[arg(long)]
    pub tau: Option<u64>,
    #[arg(long)]
    pub tail_scale: Option<u64>,
}

fn parse_list(flag: &str, s: &str) -> Result<Vec<u64>, Failure> {
    let bad = || Failure::usage(format!("--{flag}: expected a..b or a comma-separated list, got {s:?}"));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect()
}

impl SweepArgs {
    fn list(&self, flag: &str, value: &Option<String>) -> Result<Option<Vec<u64>>, Failure> {
        value.as_deref().map(|s| parse_list(flag, s)).transpose()
    }

    fn required(&self, family: Family, flag: &str, value: &Option<String>) -> Result<Vec<u64>, Failure> {
        self.list(flag, value)?
            .ok_or_else(|| Failure::usage(format!("{family} needs --{flag}")))
    }

    pub fn k_filter(&self) -> Result<Option<Vec<usize>>, Failure> {
        Ok(self.list("k", &self.k)?.map(|ks| ks.into_iter().map(|k| k as usize).collect()))
    }

    /// Every instance described by the parameters, each with a stable id.
    pub fn instances(&self, family: Family, budget: &Budget) -> Result<Vec<(String, InstanceSpec)>, Failure> {
        let mut out = Vec::new();
        match family {
            Family::Example1 => {
                for m in self.list("m", &self.m)?.unwrap_or(vec![1]) {
                    out.push((format!("{family}_m={m}"), gen_example1(m as usize)?));
                }
            }
            Family::Example2 => {
                let primes = self
                    .primes
                    .as_deref()
                    .ok_or_else(|| Failure::usage("example2 needs --primes"))?;
                let primes = parse_list("primes", primes)?;
                let tag: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
                for m in self.list("m", &self.m)?.unwrap_or(vec![1]) {
                    out.push((
                        format!("{family}_m={m}_primes={}", tag.join("-")),
                        gen_example2(&primes, m as usize, budget)?,
                    ));
                }
            }
            Family::Example3BadBasis => {
                for l in self.required(family, "l", &self.l)? {
                    out.push((format!("{family}_l={l}"), gen_example3(l as u32)?));
                }
            }
            Family::Prop13 => {
                let tail = self.tail_scale.unwrap_or(1);
                for k in self.required(family, "k", &self.k)? {
                    let ns = self.list("n", &self.n)?.unwrap_or(vec![k + 1]);
                    for n in ns {
                        out.push((format!("{family}_k={k}_n={n}"), gen_prop13(k as usize, n as usize, tail)?));
                    }
                }
            }
            Family::Prop14 => {
                for n in self.required(family, "n", &self.n)? {
                    out.push((format!("{family}_n={n}"), gen_prop14(n as usize, self.tau, budget)?));
                }
            }
            Family::Prop15 => {
                for n in self.required(family, "n", &self.n)? {
                    out.push((format!("{family}_n={n}"), gen_prop15(n as usize)?));
                }
            }
            Family::RandomLattice | Family::RandomSimplicial => {
                let bound = self.entry_bound.unwrap_or(5);
                let ms = self.required(family, "m", &self.m)?;
                let ns = self.required(family, "n", &self.n)?;
                let seeds = self.list("seed", &self.seed)?.unwrap_or(vec![0]);
                for &m in &ms {
                    for &n in &ns {
                        for &seed in &seeds {
                            let spec = gen_random(family, m as usize, n as usize, bound, seed, budget)?;
                            out.push((format!("{family}_m={m}_n={n}_seed={seed}"), spec));
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}
