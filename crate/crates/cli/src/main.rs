mod commands;
mod config;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hardy_sphere::Error;

use config::{Cli, RunConfig};

const USAGE: u8 = 2;

/// Input problems exit with 2; anything else that stops a run exits with 1.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::InvalidLambda(_)
            | Error::InvalidDimension(_)
            | Error::Domain { .. }
            | Error::InvalidArgument(_)
            | Error::ExactUnavailable(_)
            | Error::TruncationTooSmall { .. }
            | Error::MemoryGuard { .. }
            | Error::DimensionUnsupported(..),
        ) => USAGE,
        _ => 1,
    }
}

fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("HARDY_SPHERE_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| anyhow::anyhow!("HARDY_SPHERE_THREADS must be a positive integer, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match init_threads().and_then(|()| RunConfig::from_cli(cli)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(USAGE);
        }
    };
    let (report, code) = match commands::run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::File::create(path)
            .map_err(anyhow::Error::from)
            .and_then(|f| {
                let mut w = std::io::BufWriter::new(f);
                report.write(cfg.format, &mut w)?;
                w.flush()?;
                Ok(())
            }),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            report.write(cfg.format, &mut lock)
        }
    };
    if let Err(e) = written {
        let broken_pipe = e
            .chain()
            .filter_map(|c| c.downcast_ref::<std::io::Error>())
            .any(|io| io.kind() == std::io::ErrorKind::BrokenPipe);
        if broken_pipe {
            return ExitCode::from(code as u8);
        }
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
