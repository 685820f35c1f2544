use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use vcstream::graphstream::make_stream;
use vcstream::instances::{
    gen_double_fan, gen_planted, parse_bits, parse_family, read_instance, DoubleFanSpec, Instance, PlantedSpec,
};
use vcstream::kernel_adjacency::{kernel_largest_induced, kernel_partition_q, kernel_pifree, reduce_str, KernelOutput};
use vcstream::kernel_lowrank::{kernel_by_rank, low_rank_reduce_str};
use vcstream::oracle_reference::{brute_is_pi_free, brute_min_deletion, brute_min_oct};
use vcstream::properties::{family_oracle, AdjacencyCharacterization, ExplicitFamily, PFunction, PatternGraph};
use vcstream::solve_cvd::{solve_cvd_with, CvdOptions};
use vcstream::solve_hfree::{solve_hfree_stream_with, solve_pifree_explicit, HfreeOptions};
use vcstream::solve_oct::{solve_oct, solve_oct_cc_with, OctCcOptions};
use vcstream::solve_oracle::{solve_equivclass_enum, solve_with_a1, solve_with_a2, A2Variant};
use vcstream::{Error, Graph, MemoryMeter, SolveOutcome, StreamHandle, StreamModel};

use crate::report::Report;
use crate::{
    BenchArgs, Cli, Command, GenKind, KernelAlg, KernelWrap, KernelizeArgs, OracleKind, Problem, SolveArgs,
    StreamArgs, VerifyArgs,
};

pub enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Usage(msg.into()))
}

pub fn run(cli: Cli) -> Outcome<u8> {
    match cli.command {
        Command::Gen { kind } => gen(kind),
        Command::Kernelize(a) => kernelize(&a),
        Command::Solve(a) => solve(&a),
        Command::Verify(a) => verify(&a),
        Command::Bench(a) => bench(&a),
    }
}

fn emit(inst: &Instance, out: Option<&Path>) -> Outcome<()> {
    match out {
        Some(p) => fs::write(p, inst.to_text()).map_err(|e| Failure::Runtime(e.into())),
        None => {
            print!("{}", inst.to_text());
            Ok(())
        }
    }
}

fn gen(kind: GenKind) -> Outcome<u8> {
    match kind {
        GenKind::Planted { n, k, p, seed, ell, out } => {
            let (g, x) = gen_planted(&PlantedSpec { n, k, p, seed })?;
            let inst = Instance::new(g, x, ell)
                .with_comment(format!("seed={seed}"))
                .with_comment(format!("planted n={n} k={k} p={p}"));
            emit(&inst, out.as_deref())?;
        }
        GenKind::Doublefan { pattern, split, x_bits, y_bits, attach_all, out } => {
            let family = load_family(&pattern)?;
            let spec = DoubleFanSpec {
                h: family.members()[0].clone(),
                split_vertex: split,
                x_bits: parse_bits(&x_bits)?,
                y_bits: parse_bits(&y_bits)?,
                attach_all_neighbors: attach_all,
            };
            if spec.x_bits.len() != spec.y_bits.len() {
                return usage("--x-bits and --y-bits must have the same length");
            }
            let (g, x, free) = gen_double_fan(&spec)?;
            let inst = Instance::new(g, x, 0)
                .with_comment("seed=none")
                .with_comment(format!("doublefan split={split} x={x_bits} y={y_bits} attach_all={attach_all}"))
                .with_comment(format!("expected={}", if free { "YES" } else { "NO" }));
            emit(&inst, out.as_deref())?;
        }
    }
    Ok(0)
}

/// Single pattern by name (`P4`, `C5`, `K3`) or a family file.
fn load_family(spec: &str) -> Outcome<ExplicitFamily> {
    let named = spec.len() > 1 && spec[1..].chars().all(|c| c.is_ascii_digit());
    if named && !Path::new(spec).exists() {
        let n: usize = spec[1..].parse().unwrap();
        let p = match spec.as_bytes()[0] {
            b'P' | b'p' if n >= 2 => PatternGraph::path(n),
            b'C' | b'c' if n >= 3 => PatternGraph::cycle(n),
            b'K' | b'k' if n >= 2 => PatternGraph::complete(n),
            _ => return usage(format!("unknown pattern name {spec:?}")),
        };
        return Ok(ExplicitFamily::single(p));
    }
    let text = fs::read_to_string(spec).map_err(|e| Failure::Runtime(e.into()))?;
    let f = parse_family(&text)?;
    if f.is_empty() {
        return usage(format!("family file {spec} has no members"));
    }
    Ok(f)
}

fn parse_order(spec: &str, n: usize) -> Outcome<Vec<usize>> {
    match spec {
        "identity" => Ok((0..n).collect()),
        "reverse" => Ok((0..n).rev().collect()),
        s => match s.strip_prefix("seed:").and_then(|t| t.parse::<u64>().ok()) {
            Some(seed) => {
                use rand::seq::SliceRandom;
                use rand::SeedableRng;
                let mut v: Vec<usize> = (0..n).collect();
                v.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
                Ok(v)
            }
            None => usage(format!("bad --order {s:?}; expected identity, reverse or seed:<n>")),
        },
    }
}

fn stream<'g>(g: &'g Graph, a: &StreamArgs) -> Outcome<StreamHandle<'g>> {
    let model: StreamModel = a.model.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let order = parse_order(&a.order, g.n())?;
    Ok(make_stream(g, model, &order)?)
}

fn characterization(cpi: Option<usize>, pfun: Option<&str>) -> Outcome<Option<AdjacencyCharacterization>> {
    match (cpi, pfun) {
        (None, None) => Ok(None),
        (None, Some(_)) => usage("--pfun needs --cpi"),
        (Some(c), p) => {
            let p: PFunction = p.unwrap_or("1").parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            Ok(Some(AdjacencyCharacterization::new(c, p)))
        }
    }
}

fn kernelize(a: &KernelizeArgs) -> Outcome<u8> {
    let inst = read_instance(&a.instance)?;
    let (g, x) = (&inst.graph, &inst.cover);
    let h = stream(g, &a.stream)?;
    let meter = MemoryMeter::from_env()?;
    let ell = a.ell.unwrap_or(inst.ell);
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure::Usage(format!("this kernel needs {flag}")));
    let mut echo = Report::default();
    let t0 = Instant::now();
    let out: KernelOutput = match (a.alg, a.wrap) {
        (Some(KernelAlg::Reduce), None) => {
            let (r, c) = (need(a.r, "--r")?, need(a.c, "--c")?);
            echo.push("alg", "reduce").push("r", r).push("c", c);
            reduce_str(&h, x, r, c, &meter)?
        }
        (Some(KernelAlg::Lowrank), None) => {
            let c = need(a.c, "--c")?;
            echo.push("alg", "lowrank").push("ell", ell).push("c", c);
            low_rank_reduce_str(&h, x, ell, c, &meter)?
        }
        (None, Some(KernelWrap::Rankc)) => {
            let (k, p, c) = (need(a.k, "--k")?, need(a.p, "--p")?, need(a.c, "--c")?);
            echo.push("alg", "rankc").push("k", k).push("p", p).push("c", c);
            kernel_by_rank(&h, x, k, p, c, &meter)?
        }
        (None, Some(w)) => {
            let ch = characterization(Some(need(a.cpi, "--cpi")?), a.pfun.as_deref())?.unwrap();
            echo.push("cpi", ch.c_pi).push("pfun", &ch.p);
            match w {
                KernelWrap::Pifree => {
                    echo.push("alg", "pifree").push("ell", ell);
                    kernel_pifree(&h, x, ell, &ch, &meter)?
                }
                KernelWrap::Largest => {
                    echo.push("alg", "largest");
                    kernel_largest_induced(&h, x, &ch, &meter)?
                }
                KernelWrap::Partition => {
                    let q = need(a.q, "--q")?;
                    echo.push("alg", "partition").push("q", q);
                    kernel_partition_q(&h, x, q, &ch, &meter)?
                }
                KernelWrap::Rankc => unreachable!(),
            }
        }
        _ => return usage("give exactly one of --alg reduce|lowrank or --wrap pifree|largest|partition|rankc"),
    };
    let wall = t0.elapsed();
    let kg = out.to_graph();
    let kx = out.cover(x);
    let kernel = Instance::new(kg, kx, ell)
        .with_comment(format!("kernel-of {}", inst.hash()))
        .with_comment(echo.to_string());
    let mut stats = Report::default();
    stats
        .push("kept", out.kept_vertices.len())
        .push("passes", out.passes)
        .push("peak_words", out.peak_words)
        .push("wall_ms", wall.as_millis())
        .push("instance", inst.hash());
    match &a.out {
        Some(p) => {
            emit(&kernel, Some(p))?;
            println!("{stats} {echo}");
        }
        None => {
            emit(&kernel, None)?;
            eprintln!("{stats} {echo}");
        }
    }
    Ok(0)
}

/// What a solve run decided, plus what the brute oracle needs to check it.
struct Solved {
    outcome: SolveOutcome,
    wall: std::time::Duration,
    alg: String,
    /// Forbidden family, or `None` for odd cycles.
    family: Option<ExplicitFamily>,
    echo: Report,
}

fn run_solver(inst: &Instance, ell: usize, a: &SolveArgs) -> Outcome<Solved> {
    let (g, x) = (&inst.graph, &inst.cover);
    let h = stream(g, &a.stream)?;
    let meter = MemoryMeter::from_env()?;
    let mut echo = Report::default();
    echo.push("model", &a.stream.model).push("order", &a.stream.order);
    let t0 = Instant::now();
    let (alg, family, outcome) = match a.problem {
        Problem::Cvd => {
            let opts = CvdOptions { cache_cover: a.cache_cover };
            let alg = if a.cache_cover { "cvd-cache" } else { "cvd" };
            (alg.to_string(), Some(ExplicitFamily::single(PatternGraph::path(3))), solve_cvd_with(&h, x, ell, opts, &meter)?)
        }
        Problem::Oct if a.cc => {
            let opts = OctCcOptions { low_mem: a.low_mem };
            let alg = if a.low_mem { "oct-cc-lowmem" } else { "oct-cc" };
            (alg.to_string(), None, solve_oct_cc_with(&h, x, ell, opts, &meter)?)
        }
        Problem::Oct => ("oct".to_string(), None, solve_oct(&h, x, ell, &meter)?),
        Problem::Hfree => {
            let Some(spec) = a.pattern.as_deref() else {
                return usage("--problem hfree needs --pattern");
            };
            let f = load_family(spec)?;
            let ch = characterization(a.cpi, a.pfun.as_deref())?;
            if let Some(ch) = &ch {
                echo.push("cpi", ch.c_pi).push("pfun", &ch.p);
            }
            echo.push("pattern", spec);
            let out = if f.q() == 1 && ch.is_none() {
                let opts = HfreeOptions { strict_induced: !a.non_strict };
                solve_hfree_stream_with(&h, x, ell, &f.members()[0], opts, &meter)?
            } else {
                solve_pifree_explicit(&h, x, ell, &f, ch.as_ref(), &meter)?
            };
            let alg = if f.q() == 1 && ch.is_none() { "hfree" } else { "pifree" };
            (alg.to_string(), Some(f), out)
        }
        Problem::PifreeOracle => {
            let Some(kind) = a.oracle else {
                return usage("--problem pifree-oracle needs --oracle a1|a2|a1sub|ecenum");
            };
            let Some(spec) = a.family.as_deref() else {
                return usage("--problem pifree-oracle needs --family");
            };
            let f = load_family(spec)?;
            let nu = a.nu.unwrap_or(f.nu());
            echo.push("family", spec).push("nu", nu);
            let oracle = family_oracle(f.clone());
            let out = match kind {
                OracleKind::A1 => solve_with_a1(&h, x, ell, nu, &oracle, &meter)?,
                OracleKind::A2 => solve_with_a2(&h, x, ell, nu, &A2Variant::Plain(&oracle), &meter)?,
                OracleKind::A1sub => solve_with_a2(&h, x, ell, nu, &A2Variant::A1Subsets(&oracle), &meter)?,
                OracleKind::Ecenum => solve_equivclass_enum(&h, x, &oracle, ell, &meter)?,
            };
            let alg = match kind {
                OracleKind::A1 => "oracle-a1",
                OracleKind::A2 => "oracle-a2",
                OracleKind::A1sub => "oracle-a1sub",
                OracleKind::Ecenum => "oracle-ecenum",
            };
            (alg.to_string(), Some(f), out)
        }
    };
    Ok(Solved { outcome, wall: t0.elapsed(), alg, family, echo })
}

fn base_report(inst: &Instance, ell: usize, s: &Solved) -> Report {
    let mut r = Report::default();
    r.outcome(&s.outcome, s.wall)
        .push("alg", &s.alg)
        .push("instance", inst.hash())
        .push("n", inst.graph.n())
        .push("k", inst.cover.len())
        .push("ell", ell);
    r
}

fn solve(a: &SolveArgs) -> Outcome<u8> {
    let inst = read_instance(&a.instance)?;
    let ell = a.ell.unwrap_or(inst.ell);
    let s = run_solver(&inst, ell, a)?;
    println!("{} {}", base_report(&inst, ell, &s), s.echo);
    Ok(if s.outcome.is_yes() { 0 } else { 1 })
}

fn verify(a: &VerifyArgs) -> Outcome<u8> {
    let inst = read_instance(&a.solve.instance)?;
    let ell = a.solve.ell.unwrap_or(inst.ell);
    let s = run_solver(&inst, ell, &a.solve)?;
    let g = &inst.graph;
    let (best, _) = match &s.family {
        Some(f) => brute_min_deletion(g, f)?,
        None => brute_min_oct(g)?,
    };
    let witness_ok = match s.outcome.verdict.solution() {
        None => true,
        Some(del) => {
            let (rest, _) = g.remove_vertices(del);
            del.len() <= ell
                && match &s.family {
                    Some(f) => brute_is_pi_free(&rest, f)?,
                    None => rest.is_bipartite(),
                }
        }
    };
    let agree = witness_ok && s.outcome.is_yes() == (best <= ell);
    let mut r = base_report(&inst, ell, &s);
    r.push("brute_min", best).push("witness_ok", witness_ok).push("agreement", agree);
    println!("{r} {}", s.echo);
    Ok(if agree { 0 } else { 1 })
}

fn bench_args(alg: &str, pattern: Option<&str>, stream: &StreamArgs) -> Outcome<SolveArgs> {
    let mut a = SolveArgs {
        instance: PathBuf::new(),
        problem: Problem::Cvd,
        ell: None,
        pattern: pattern.map(str::to_string),
        cpi: None,
        pfun: None,
        non_strict: false,
        cc: false,
        low_mem: false,
        cache_cover: false,
        oracle: None,
        family: None,
        nu: None,
        stream: stream.clone(),
    };
    match alg {
        "cvd" => {}
        "cvd-cache" => a.cache_cover = true,
        "oct" => a.problem = Problem::Oct,
        "oct-cc" => {
            a.problem = Problem::Oct;
            a.cc = true;
        }
        "oct-cc-lowmem" => {
            a.problem = Problem::Oct;
            a.cc = true;
            a.low_mem = true;
        }
        "hfree" if pattern.is_some() => a.problem = Problem::Hfree,
        "hfree" => return usage("bench alg hfree needs --pattern"),
        other => return usage(format!("unknown bench alg {other:?}")),
    }
    Ok(a)
}

fn bench(a: &BenchArgs) -> Outcome<u8> {
    let algs: Vec<&str> = a.algs.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let configs: Vec<(String, SolveArgs)> = algs
        .iter()
        .map(|alg| Ok((alg.to_string(), bench_args(alg, a.pattern.as_deref(), &a.stream)?)))
        .collect::<Outcome<_>>()?;
    let mut files: Vec<PathBuf> = fs::read_dir(&a.dir)
        .map_err(|e| Failure::Runtime(e.into()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let header = ["instance", "alg", "n", "m", "k", "ell", "verdict", "passes", "peak_words", "wall_ms"];
    let mut rows = vec![header.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
    for path in &files {
        let inst = read_instance(path)?;
        let ell = a.ell.unwrap_or(inst.ell);
        let name = path.file_name().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        for (alg, cfg) in &configs {
            let s = run_solver(&inst, ell, cfg)?;
            rows.push(vec![
                name.clone(),
                alg.clone(),
                inst.graph.n().to_string(),
                inst.graph.m().to_string(),
                inst.cover.len().to_string(),
                ell.to_string(),
                s.outcome.verdict.to_string(),
                s.outcome.passes.to_string(),
                s.outcome.peak_words.to_string(),
                s.wall.as_millis().to_string(),
            ]);
        }
    }
    let widths: Vec<usize> = (0..header.len()).map(|c| rows.iter().map(|r| r[c].len()).max().unwrap()).collect();
    for r in &rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        println!("{}", cells.join("  ").trim_end());
    }
    Ok(0)
}
