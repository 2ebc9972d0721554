//! Pulse-schedule files: a JSON array of pulse objects,
//!
//! ```json
//! [
//!   { "axis": "x", "levels": [1, 2], "angle": 9.42477796076938 }
//! ]
//! ```
//!
//! with angles in radians. Serialization uses the shortest decimal that
//! round-trips the exact `f64`, so save-then-load reproduces angles bit for
//! bit. Levels may appear in either order in a file: x pulses are symmetric
//! in the pair, and a y pulse with descending levels is normalized by
//! negating its angle (the same operator). Y pulses are legal in files --
//! consumers lower them to x triples when a physical line is needed.

use crate::pulse::{Pulse, PulseSchedule};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScheduleError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed schedule JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("pulse {index}: unknown axis {axis:?}, expected \"x\" or \"y\"")]
    UnknownAxis { index: usize, axis: String },
    #[error("pulse {index}: level {level} out of range 0..=3")]
    LevelOutOfRange { index: usize, level: i64 },
    #[error("pulse {index}: transition needs two distinct levels, got {level} twice")]
    DegenerateLevels { index: usize, level: i64 },
    #[error("pulse {index}: angle must be finite")]
    NonFiniteAngle { index: usize },
}

/// The on-disk shape of one pulse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseRecord {
    pub axis: String,
    pub levels: [i64; 2],
    pub angle: f64,
}

impl From<&Pulse> for PulseRecord {
    fn from(pulse: &Pulse) -> Self {
        PulseRecord {
            axis: pulse.axis.to_string(),
            levels: [
                pulse.transition.lower() as i64,
                pulse.transition.upper() as i64,
            ],
            angle: pulse.angle,
        }
    }
}

impl PulseRecord {
    fn into_pulse(self, index: usize) -> Result<Pulse, ScheduleError> {
        let [a, b] = self.levels;
        for level in [a, b] {
            if !(0..=3).contains(&level) {
                return Err(ScheduleError::LevelOutOfRange { index, level });
            }
        }
        if a == b {
            return Err(ScheduleError::DegenerateLevels { index, level: a });
        }
        if !self.angle.is_finite() {
            return Err(ScheduleError::NonFiniteAngle { index });
        }
        let (a, b) = (a as u8, b as u8);
        let pulse = match self.axis.as_str() {
            "x" => Pulse::x(a, b, self.angle),
            "y" => Pulse::y(a, b, self.angle),
            other => {
                return Err(ScheduleError::UnknownAxis {
                    index,
                    axis: other.to_string(),
                })
            }
        };
        Ok(pulse.expect("levels were validated above"))
    }
}

/// The serializable view of a schedule, for embedding in reports.
pub fn pulse_records(schedule: &PulseSchedule) -> Vec<PulseRecord> {
    schedule.pulses().iter().map(PulseRecord::from).collect()
}

/// Renders a schedule as pretty-printed JSON (no trailing newline).
pub fn schedule_to_json(schedule: &PulseSchedule) -> String {
    serde_json::to_string_pretty(&pulse_records(schedule))
        .expect("pulse records contain only finite plain data")
}

/// Parses a schedule from JSON text, validating each pulse.
pub fn schedule_from_json(text: &str) -> Result<PulseSchedule, ScheduleError> {
    let records: Vec<PulseRecord> = serde_json::from_str(text)?;
    let pulses = records
        .into_iter()
        .enumerate()
        .map(|(index, record)| record.into_pulse(index))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PulseSchedule::new(pulses))
}

pub fn save_schedule(schedule: &PulseSchedule, path: &Path) -> Result<(), ScheduleError> {
    let mut text = schedule_to_json(schedule);
    text.push('\n');
    std::fs::write(path, text).map_err(|source| ScheduleError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_schedule(path: &Path) -> Result<PulseSchedule, ScheduleError> {
    let text = std::fs::read_to_string(path).map_err(|source| ScheduleError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    schedule_from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{compile, Gate};
    use std::f64::consts::PI;

    fn temp_path(name: &str) -> PathBuf {
        let mut p = std::env::temp_dir();
        p.push(format!("ququart-io-{}-{name}", std::process::id()));
        p
    }

    #[test]
    fn json_round_trip_preserves_every_angle_bit() {
        let schedule = PulseSchedule::new(vec![
            Pulse::x(0, 3, 3.5 * PI).unwrap(),
            Pulse::y(1, 3, 0.1 + 0.2).unwrap(), // deliberately non-representable
            Pulse::x(1, 2, -7.0 * PI / 3.0).unwrap(),
        ]);
        let text = schedule_to_json(&schedule);
        let back = schedule_from_json(&text).unwrap();
        assert_eq!(back.len(), schedule.len());
        for (a, b) in schedule.pulses().iter().zip(back.pulses()) {
            assert_eq!(a, b, "pulse changed across the round trip");
        }
    }

    #[test]
    fn file_round_trip_reproduces_the_seven_pulse_line() {
        let compiled = compile(Gate::HadamardBoth).unwrap();
        let path = temp_path("hab.json");
        save_schedule(compiled.schedule(), &path).unwrap();
        let loaded = load_schedule(&path).unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(loaded.len(), 7);
        assert_eq!(loaded.pulses(), compiled.schedule().pulses());
    }

    #[test]
    fn reversed_levels_load_as_the_same_operator() {
        let text = r#"[
            { "axis": "x", "levels": [2, 0], "angle": 1.25 },
            { "axis": "y", "levels": [3, 1], "angle": 0.5 }
        ]"#;
        let schedule = schedule_from_json(text).unwrap();
        let x = schedule.pulses()[0];
        assert_eq!((x.transition.lower(), x.transition.upper()), (0, 2));
        assert_eq!(x.angle, 1.25);
        let y = schedule.pulses()[1];
        assert_eq!((y.transition.lower(), y.transition.upper()), (1, 3));
        assert_eq!(y.angle, -0.5, "descending y levels negate the angle");
        let same =
            schedule_from_json(r#"[ { "axis": "y", "levels": [1, 3], "angle": -0.5 } ]"#).unwrap();
        assert_eq!(schedule.pulses()[1], same.pulses()[0]);
    }

    #[test]
    fn each_malformation_gets_its_own_error() {
        assert!(matches!(
            schedule_from_json("["),
            Err(ScheduleError::Json(_))
        ));
        assert!(matches!(
            schedule_from_json(r#"[{ "axis": "z", "levels": [0, 1], "angle": 1 }]"#),
            Err(ScheduleError::UnknownAxis { index: 0, .. })
        ));
        assert!(matches!(
            schedule_from_json(r#"[{ "axis": "x", "levels": [0, 4], "angle": 1 }]"#),
            Err(ScheduleError::LevelOutOfRange { index: 0, level: 4 })
        ));
        assert!(matches!(
            schedule_from_json(r#"[{ "axis": "x", "levels": [-1, 2], "angle": 1 }]"#),
            Err(ScheduleError::LevelOutOfRange {
                index: 0,
                level: -1
            })
        ));
        assert!(matches!(
            schedule_from_json(r#"[{ "axis": "x", "levels": [2, 2], "angle": 1 }]"#),
            Err(ScheduleError::DegenerateLevels { index: 0, level: 2 })
        ));
        // Index points at the offending pulse, not the first.
        assert!(matches!(
            schedule_from_json(
                r#"[
                    { "axis": "x", "levels": [0, 1], "angle": 1 },
                    { "axis": "x", "levels": [3, 3], "angle": 1 }
                ]"#
            ),
            Err(ScheduleError::DegenerateLevels { index: 1, level: 3 })
        ));
    }

    #[test]
    fn missing_file_reports_the_path() {
        let path = temp_path("missing.json");
        let err = load_schedule(&path).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("cannot read"));
        assert!(message.contains("missing.json"));
    }
}
