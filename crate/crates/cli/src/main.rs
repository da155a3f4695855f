mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use conradlab::{Family, OrderingDescriptor};

use args::{Cli, Command, CrossingSub, Format};
use commands::Ctx;
use output::CliResult;

fn run(cli: &Cli) -> CliResult<u8> {
    let g = &cli.global;
    let family: Family = g.family.parse()?;
    let ord = match (&g.ord, &g.ord_file) {
        (Some(text), _) => Some(OrderingDescriptor::parse(text, family)?),
        (None, Some(path)) => Some(commands::load_descriptor(path)?),
        (None, None) => None,
    };
    // A descriptor fixes its own family (slope orderings live on Z^n).
    let family = ord.as_ref().map_or(family, OrderingDescriptor::family);
    let ctx = Ctx {
        family,
        ord,
        radius: g.radius,
        n_max: g.n_max,
        cap: g.cap,
    };
    let outcome = match &cli.command {
        Command::Compare { g, h } => commands::compare(&ctx, g, h)?,
        Command::Enumerate => commands::enumerate(&ctx)?,
        Command::Verify {
            check,
            table,
            enumeration,
        } => commands::verify(&ctx, *check, table.as_deref(), enumeration)?,
        Command::Crossing {
            sub: Some(CrossingSub::Verify { file }),
            ..
        } => commands::crossing_verify(file)?,
        Command::Crossing {
            sub: None,
            from_witness,
            basepoint,
        } => commands::crossing(&ctx, *from_witness, basepoint.as_deref())?,
        Command::Realize { enumeration } => commands::realize(&ctx, enumeration)?,
        Command::Space { sub } => commands::space(&ctx, sub)?,
    };
    let default_format = match cli.command {
        Command::Realize { .. } => Format::Csv,
        _ => Format::Json,
    };
    let format = g.format.unwrap_or(default_format);
    output::emit(
        cli,
        ctx.family.to_string(),
        ctx.ord.as_ref().map(|o| o.to_string()),
        format,
        &outcome,
    )?;
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
