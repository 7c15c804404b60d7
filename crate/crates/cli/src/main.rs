use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use canyonlab::equivalence::{decide_cards, DecideOptions};
use canyonlab::germ::parse_germ;
use canyonlab::invariants::{identity_card_with, CardOptions};
use canyonlab::numerics::{parse_rat, with_config, NumConfig, Rat};
use canyonlab::report::{card_json, error_json, to_json, verdict_json, SweepJson};
use canyonlab::sweep::sweep;
use canyonlab::Error;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "canyonlab", version, about = "Bi-Lipschitz identity cards of plane curve germs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the identity card of a germ
    Card {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether two germs are bi-Lipschitz inequivalent
    Compare {
        f: String,
        g: String,
        /// Include the full refutation trace
        #[arg(long)]
        certificate: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Compare a family pairwise over parameter values
    Sweep {
        expr: String,
        #[arg(long)]
        param: String,
        /// Comma-separated rationals, e.g. `1,2,1/2`
        #[arg(long, value_delimiter = ',', value_parser = rat_arg)]
        values: Vec<Rat>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Parameter binding `name=value`, repeatable
    #[arg(long = "bind", value_parser = binding_arg)]
    bind: Vec<(String, Rat)>,
    /// Fixed Puiseux truncation instead of the adaptive one
    #[arg(long, value_parser = rat_arg)]
    trunc: Option<Rat>,
    #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u32).range(53..=65536))]
    precision_bits: u32,
    /// Zero-test tolerance on interval radii
    #[arg(long, default_value_t = 2f64.powi(-128))]
    zero_tol: f64,
    /// Compact JSON (the default)
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON
    #[arg(long)]
    pretty: bool,
}

impl Common {
    fn bindings(&self) -> BTreeMap<String, Rat> {
        self.bind.iter().cloned().collect()
    }

    fn decide_options(&self) -> DecideOptions {
        DecideOptions {
            card: CardOptions {
                trunc: self.trunc.clone(),
                ..CardOptions::default()
            },
            ..DecideOptions::default()
        }
    }

    fn config(&self) -> NumConfig {
        NumConfig {
            precision_bits: self.precision_bits,
            zero_tol: self.zero_tol,
        }
    }
}

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

fn binding_arg(s: &str) -> Result<(String, Rat), String> {
    let (name, value) = s.split_once('=').ok_or("expected name=value")?;
    Ok((name.trim().to_string(), rat_arg(value)?))
}

fn run(cmd: &Command) -> canyonlab::Result<String> {
    match cmd {
        Command::Card { expr, common } => {
            let germ = parse_germ(expr, &common.bindings())?;
            let card = identity_card_with(&germ.poly, &common.decide_options().card)?;
            Ok(card_json(&card, common.pretty))
        }
        Command::Compare {
            f,
            g,
            certificate,
            common,
        } => {
            let b = common.bindings();
            let (f, g) = (parse_germ(f, &b)?, parse_germ(g, &b)?);
            let opts = common.decide_options();
            let fc = identity_card_with(&f.poly, &opts.card)?;
            let gc = identity_card_with(&g.poly, &opts.card)?;
            let v = decide_cards(&fc, &gc, &opts)?;
            Ok(verdict_json(&v, *certificate, common.pretty))
        }
        Command::Sweep {
            expr,
            param,
            values,
            common,
        } => {
            let r = sweep(expr, param, values, &common.bindings(), &common.decide_options())?;
            Ok(to_json(&SweepJson::from(&r), common.pretty))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let common = match &cli.command {
        Command::Card { common, .. } | Command::Compare { common, .. } | Command::Sweep { common, .. } => common,
    };
    match with_config(common.config(), || run(&cli.command)) {
        Ok(doc) => {
            // a closed pipe is not an error of the computation
            let _ = writeln!(std::io::stdout(), "{doc}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            match e {
                Error::Parse { .. } | Error::UnboundParameter(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
