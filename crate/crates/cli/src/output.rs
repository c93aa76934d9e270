//! CSV encodings of sweep results and trial dumps.
//!
//! Accuracy files: `index,tau,tp,tn` or `index,d,tp,tn`, rates with two
//! decimals. Runtime files: `index,runtime` where `index` is the depth and
//! seconds carry six decimals.

use std::io::{Read, Write};

use ams_detect::TrialOutcome;

use crate::error::{HarnessError, Result};
use crate::sweep::{AccuracyRow, AccuracySweep, Parameter, RuntimeRow, RuntimeSweep};

fn format_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

pub fn write_accuracy<W: Write>(sweep: &AccuracySweep, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", sweep.parameter.column(), "tp", "tn"])?;
    for r in &sweep.rows {
        w.write_record([
            r.index.to_string(),
            format_value(r.value),
            format!("{:.2}", r.tp),
            format!("{:.2}", r.tn),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_accuracy<R: Read>(input: R) -> Result<AccuracySweep> {
    let mut rd = csv::Reader::from_reader(input);
    let headers = rd.headers()?.clone();
    let parameter = match headers.iter().collect::<Vec<_>>()[..] {
        ["index", "tau", "tp", "tn"] => Parameter::Tau,
        ["index", "d", "tp", "tn"] => Parameter::Depth,
        _ => {
            return Err(HarnessError::Invalid(format!(
                "unexpected accuracy header {headers:?}"
            )))
        }
    };
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let field = |i: usize| -> Result<f64> {
            rec[i]
                .parse()
                .map_err(|_| HarnessError::Invalid(format!("bad number `{}`", &rec[i])))
        };
        rows.push(AccuracyRow {
            index: field(0)? as usize,
            value: field(1)?,
            tp: field(2)?,
            tn: field(3)?,
        });
    }
    Ok(AccuracySweep { parameter, rows })
}

pub fn write_runtime<W: Write>(sweep: &RuntimeSweep, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "runtime"])?;
    for r in &sweep.rows {
        w.write_record([r.depth.to_string(), format!("{:.6}", r.seconds)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_runtime<R: Read>(input: R) -> Result<RuntimeSweep> {
    let mut rd = csv::Reader::from_reader(input);
    if rd.headers()?.iter().collect::<Vec<_>>() != ["index", "runtime"] {
        return Err(HarnessError::Invalid("unexpected runtime header".into()));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let bad = |s: &str| HarnessError::Invalid(format!("bad number `{s}`"));
        rows.push(RuntimeRow {
            depth: rec[0].parse().map_err(|_| bad(&rec[0]))?,
            seconds: rec[1].parse().map_err(|_| bad(&rec[1]))?,
        });
    }
    Ok(RuntimeSweep { rows })
}

/// One row per host: `host,switch,window,actual,predicted,oracle,f2_estimate,f0_exact,f2_exact`.
pub fn write_trial<W: Write>(outcome: &TrialOutcome, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "host",
        "switch",
        "window",
        "actual",
        "predicted",
        "oracle",
        "f2_estimate",
        "f0_exact",
        "f2_exact",
    ])?;
    for r in &outcome.records {
        w.write_record([
            r.host.to_string(),
            r.switch.to_string(),
            "0".to_string(),
            r.actual.to_string(),
            r.predicted.to_string(),
            r.oracle.to_string(),
            format!("{:.2}", r.f2_estimate),
            r.f0_exact.to_string(),
            r.f2_exact.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
