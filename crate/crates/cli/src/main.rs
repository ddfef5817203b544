//! Command-line front end: heralding runs, phase-space maps and table reproduction.

mod config;

use std::fs;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use opa_herald::density::{DensityMatrix, StateRef};
use opa_herald::dynamics::{NoiseParams, lindblad_evolve};
use opa_herald::herald::{HeraldConfig, HeraldResult, herald_auto, herald_operator};
use opa_herald::phase_space::{PhaseGrid, PhaseMap, complexity_from_map, husimi_map, negativity_volume, wigner_map};
use opa_herald::reproduce::{ARTIFACTS, ReproOptions, Table, reproduce};
use opa_herald::{Error, FockKet, Result};
use serde_json::json;

use config::{Flags, Format, Resolved};

#[derive(Parser, Debug)]
#[command(name = "opa-herald", version, about = "Heralded non-Gaussian states from an optical parametric amplifier")]
struct Cli {
    /// JSON file with default flag values (same names as the flags).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Herald a state from squeezed vacuum and dump it with its probability.
    Herald(#[command(flatten)] Flags),
    /// Wigner map and negativity of a heralded or loaded state.
    Wigner(#[command(flatten)] Flags),
    /// Husimi map, Wehrl entropy, Fisher information and complexity.
    Complexity(#[command(flatten)] Flags),
    /// Regenerate the data behind a table or figure ("all" runs every artifact).
    Reproduce {
        artifact: String,
        #[command(flatten)]
        flags: Flags,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Degenerate(_) => 2,
        Error::Truncation { .. } | Error::Coverage { .. } => 3,
        Error::Integrator { .. } => 4,
        Error::Io(_) | Error::Json(_) => 1,
    }
}

fn timestamp_line(r: &Resolved) -> Option<String> {
    if r.no_timestamp {
        return None;
    }
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    Some(format!("generated_at_unix={secs}"))
}

fn write_table(t: &Table, r: &Resolved) -> Result<PathBuf> {
    let path = match r.format {
        Format::Csv => {
            let p = r.out.join(format!("{}.csv", t.id));
            fs::write(&p, t.to_csv(timestamp_line(r).as_deref()))?;
            p
        }
        Format::Json => {
            let p = r.out.join(format!("{}.json", t.id));
            let mut v = json!({ "id": t.id, "columns": t.columns, "rows": t.to_json_rows() });
            if !t.notes.is_empty() {
                v["notes"] = json!(t.notes);
            }
            if let Some(ts) = timestamp_line(r) {
                v["generated"] = json!(ts);
            }
            fs::write(&p, serde_json::to_string_pretty(&v)? + "\n")?;
            p
        }
    };
    Ok(path)
}

fn herald_config(r: &Resolved) -> Result<HeraldConfig> {
    Ok(HeraldConfig::sv(r.m, r.n, r.gain, r.squeeze).with_spec(r.spec()?))
}

fn run_herald(r: &Resolved) -> Result<HeraldResult> {
    let cfg = herald_config(r)?;
    herald_auto(&cfg, herald_operator)
}

/// The analysed state: loaded or heralded, then evolved when loss or dephasing is requested.
enum Source {
    Pure(FockKet),
    Mixed(DensityMatrix),
}

impl Source {
    fn as_ref(&self) -> StateRef<'_> {
        match self {
            Source::Pure(k) => StateRef::Pure(k),
            Source::Mixed(m) => StateRef::Mixed(m),
        }
    }
}

fn load_state(r: &Resolved) -> Result<Source> {
    let ket = match &r.state {
        Some(p) => {
            let ket = FockKet::from_json(&fs::read_to_string(p)?)?;
            if !ket.is_normalized() {
                return Err(Error::Domain(format!("state in {} is not normalized", p.display())));
            }
            ket
        }
        None => run_herald(r)?.ket,
    };
    let kt = match r.kappa_t.as_slice() {
        [] => 0.0,
        [k] => *k,
        _ => return Err(Error::Domain("state commands take a single --kappa-t value".into())),
    };
    if kt == 0.0 && r.kphi_t == 0.0 {
        return Ok(Source::Pure(ket));
    }
    let p = NoiseParams::from_products(kt, r.kphi_t)?;
    let rho = lindblad_evolve(&DensityMatrix::from_ket(&ket), &p, r.steps.unwrap_or_else(|| p.default_steps()))?;
    Ok(Source::Mixed(rho))
}

fn grids(r: &Resolved) -> Result<(PhaseGrid, PhaseGrid)> {
    let full = PhaseGrid::square(r.grid_extent, r.grid_n)?;
    let half = PhaseGrid::square(r.grid_extent, r.grid_n.div_ceil(2))?;
    Ok((full, half))
}

fn write_map(map: &PhaseMap, name: &str, r: &Resolved) -> Result<()> {
    let mut f = BufWriter::new(fs::File::create(r.out.join(format!("{name}.bin")))?);
    map.write_binary(&mut f)?;
    if r.format == Format::Csv {
        let mut f = BufWriter::new(fs::File::create(r.out.join(format!("{name}.csv")))?);
        map.write_csv(&mut f)?;
    }
    Ok(())
}

fn write_scalars(name: &str, rows: &[(&str, f64, f64)], r: &Resolved) -> Result<()> {
    let mut t = Table::new(name, &["metric", "value", "value_half_grid", "abs_change"]);
    for (k, full, half) in rows {
        t.push(vec![(*k).into(), (*full).into(), (*half).into(), (full - half).abs().into()]);
    }
    let path = write_table(&t, r)?;
    for (k, full, half) in rows {
        println!("{k} = {full:.6} (half grid {half:.6})");
    }
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_herald(r: &Resolved) -> Result<()> {
    let cfg = herald_config(r)?;
    let res = run_herald(r)?;
    let dump = res.dump(&cfg);
    let path = match r.format {
        Format::Json => {
            let p = r.out.join("herald.json");
            fs::write(&p, serde_json::to_string_pretty(&dump)? + "\n")?;
            p
        }
        Format::Csv => {
            let mut t = Table::new("herald", &["n", "re", "im", "prob"]);
            t.notes.push(format!(
                "m={} n={} g={} r={} p_sv={:e} parity={:?}",
                r.m, r.n, r.gain, r.squeeze, dump.p_sv, dump.parity
            ));
            for (k, a) in dump.amps.iter().enumerate() {
                t.push(vec![k.into(), a[0].into(), a[1].into(), (a[0] * a[0] + a[1] * a[1]).into()]);
            }
            fs::write(r.out.join("herald.json"), serde_json::to_string_pretty(&dump)? + "\n")?;
            write_table(&t, r)?
        }
    };
    println!("p_sv = {:e}", dump.p_sv);
    println!("parity = {}", serde_json::to_value(dump.parity)?.as_str().unwrap_or("?"));
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_wigner(r: &Resolved) -> Result<()> {
    let src = load_state(r)?;
    let (full, half) = grids(r)?;
    let w = wigner_map(src.as_ref(), &full)?;
    let w_half = wigner_map(src.as_ref(), &half)?;
    write_map(&w, "wigner", r)?;
    write_scalars(
        "wigner_metrics",
        &[
            ("negativity", negativity_volume(&w)?, negativity_volume(&w_half)?),
            ("integral", w.integral(), w_half.integral()),
            ("min", w.min(), w_half.min()),
            ("max", w.max(), w_half.max()),
        ],
        r,
    )
}

fn cmd_complexity(r: &Resolved) -> Result<()> {
    let src = load_state(r)?;
    let (full, half) = grids(r)?;
    let q = husimi_map(src.as_ref(), &full)?;
    let q_half = husimi_map(src.as_ref(), &half)?;
    write_map(&q, "husimi", r)?;
    let c = complexity_from_map(&q)?;
    let ch = complexity_from_map(&q_half)?;
    write_scalars(
        "complexity_metrics",
        &[("wehrl", c.wehrl, ch.wehrl), ("fisher", c.fisher, ch.fisher), ("complexity", c.complexity, ch.complexity)],
        r,
    )
}

fn cmd_reproduce(r: &Resolved, artifact: &str) -> Result<()> {
    let opts = ReproOptions {
        spec: r.spec()?,
        grid: PhaseGrid::square(r.grid_extent, r.grid_n)?,
        kts: r.kappa_t.clone(),
        steps: r.steps,
        ..ReproOptions::default()
    };
    let ids: Vec<&str> = if artifact == "all" { ARTIFACTS.to_vec() } else { vec![artifact] };
    for id in ids {
        for t in reproduce(id, &opts)? {
            println!("wrote {}", write_table(&t, r)?.display());
        }
    }
    Ok(())
}

fn write_resolved(r: &Resolved) -> Result<()> {
    fs::write(r.out.join("config.json"), serde_json::to_string_pretty(r)? + "\n")?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let (name, flags, artifact) = match &cli.command {
        Command::Herald(f) => ("herald", f, None),
        Command::Wigner(f) => ("wigner", f, None),
        Command::Complexity(f) => ("complexity", f, None),
        Command::Reproduce { artifact, flags } => ("reproduce", flags, Some(artifact.clone())),
    };
    let r = Resolved::build(name, flags, cli.config.as_deref(), artifact)?;
    let _ = rayon::ThreadPoolBuilder::new().num_threads(r.workers).build_global();
    fs::create_dir_all(&r.out)?;
    write_resolved(&r)?;
    match &cli.command {
        Command::Herald(_) => cmd_herald(&r),
        Command::Wigner(_) => cmd_wigner(&r),
        Command::Complexity(_) => cmd_complexity(&r),
        Command::Reproduce { artifact, .. } => cmd_reproduce(&r, artifact),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
