use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;

use super::{EpOutcome, SpectrumFlags, SweepEvent, SweepResult};

/// One row per (step, mode): `param,mode_id,re,im,flags`, floats with 17
/// significant digits, flags joined by `;`.
pub fn sweep_csv(r: &SweepResult) -> String {
    let mut out = String::from("param,mode_id,re,im,flags\n");
    for step in &r.steps {
        let spectrum = step.flags.tags();
        for (m, (v, mode)) in step.eigenvalues.iter().zip(&step.mode_flags).enumerate() {
            let mut flags: Vec<&str> = mode.clone();
            flags.extend(&spectrum);
            if step.refined {
                flags.push("refined");
            }
            out.push_str(&format!("{:.16e},{m},{:.16e},{:.16e},{}\n", step.value, v.re, v.im, flags.join(";")));
        }
    }
    out
}

#[derive(Serialize)]
struct EventsDoc<'a> {
    family: &'a str,
    param_name: &'a str,
    n_steps: usize,
    all_steps: SpectrumFlags,
    events: &'a [SweepEvent],
}

/// Events plus the flags that hold at every step.
pub fn sweep_events_json(r: &SweepResult) -> String {
    let all = |f: fn(&SpectrumFlags) -> bool| r.steps.iter().all(|s| f(&s.flags));
    let doc = EventsDoc {
        family: &r.family,
        param_name: &r.param_name,
        n_steps: r.steps.len(),
        all_steps: SpectrumFlags { origin: all(|f| f.origin), real_axis: all(|f| f.real_axis), imag_axis: all(|f| f.imag_axis) },
        events: &r.events,
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

pub fn ep_json(outcome: &EpOutcome) -> String {
    serde_json::to_string_pretty(outcome).expect("serializable") + "\n"
}

/// Writes `contents` to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: impl AsRef<Path>, contents: &str) -> io::Result<()> {
    let path = path.as_ref();
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}
