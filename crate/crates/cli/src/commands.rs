use std::fs;
use std::path::Path;

use chanmod::csv_format;
use chanmod::link::{self, EavesdropOutcome};

use crate::args::{EavesdropArgs, RunConfig, SweepArgs, TransmitArgs};

/// Outcome of a command: process exit code.
pub const EXIT_OK: u8 = 0;
/// The link did not deliver (calibration failure, wrong or missing text).
pub const EXIT_LINK_FAILURE: u8 = 1;
/// Bad configuration, unreadable input or unwritable output.
pub const EXIT_USAGE: u8 = 2;

fn write_file(path: &Path, contents: &str) -> Result<(), u8> {
    fs::write(path, contents).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        EXIT_USAGE
    })
}

fn config_error(e: chanmod::Error) -> u8 {
    eprintln!("error: {e}");
    EXIT_USAGE
}

pub fn transmit(args: &TransmitArgs) -> Result<(), u8> {
    let config = args.run.session_config().map_err(config_error)?;
    if let Err(e) = chanmod::codec::encode_ascii(&args.message) {
        return Err(config_error(e));
    }
    let trace = match link::transmit(config, &args.message) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return Err(EXIT_LINK_FAILURE);
        }
    };
    if let Some(path) = &args.out {
        write_file(path, &csv_format::write_trace(&trace))?;
    }
    println!("message={}", args.message.escape_default());
    println!(
        "decoded_text={}",
        trace.decoded_text.to_string().escape_default()
    );
    println!("bits={}", trace.records.len());
    println!("bit_errors={}", trace.bit_errors);
    println!("class_separation={:.9}", trace.calibration.class_separation);
    println!("mode={}", trace.summary.mode);
    if trace.delivered() {
        Ok(())
    } else {
        Err(EXIT_LINK_FAILURE)
    }
}

pub fn calibrate(run: &RunConfig) -> Result<(), u8> {
    let mut config = run.session_config().map_err(config_error)?;
    match link::calibrate(&mut config.channel) {
        Ok(t) => {
            println!("phi_same={:.9}", t.phi_same);
            println!("phi_alt={:.9}", t.phi_alt);
            println!("class_separation={:.9}", t.class_separation);
            println!("same_spread={:.9}", t.same_spread);
            println!("alt_spread={:.9}", t.alt_spread);
            println!("consistency_tolerance={}", t.consistency_tolerance);
            Ok(())
        }
        Err(e) => {
            eprintln!("error: {e}");
            Err(EXIT_LINK_FAILURE)
        }
    }
}

pub fn sweep(args: &SweepArgs) -> Result<(), u8> {
    let base = args.run.session_config().map_err(config_error)?;
    let points = link::ber_sweep(&base, &args.sigmas.0, args.bits).map_err(config_error)?;
    let csv = csv_format::write_sweep(&points);
    match &args.out {
        Some(path) => write_file(path, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

pub fn eavesdrop(args: &EavesdropArgs) -> Result<(), u8> {
    let text = fs::read_to_string(&args.trace).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", args.trace.display());
        EXIT_USAGE
    })?;
    let trace = csv_format::read_trace(&text).map_err(config_error)?;
    match link::eavesdrop(&trace, args.knows_tx, args.knows_rx).map_err(config_error)? {
        EavesdropOutcome::Decoded(t) => println!("{}", t.escape_default()),
        EavesdropOutcome::Indeterminate => {
            println!("{}", EavesdropOutcome::INDETERMINATE);
            println!("{}", EavesdropOutcome::EXPLANATION);
        }
    }
    Ok(())
}
