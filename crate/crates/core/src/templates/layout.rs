//! Flat parameter-vector layout descriptors.

use serde::{Deserialize, Serialize};

use crate::pulse::ConstraintSpec;

/// Which pulse field a θ entry feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamField {
    Amplitude,
    Angle,
    Duration,
}

impl ParamField {
    /// Constraint range for this field under the active spec. Angles are
    /// always `[0, 2π)`.
    pub fn range(&self, cspec: &ConstraintSpec) -> (f64, f64) {
        match self {
            ParamField::Amplitude => cspec.amplitude_range,
            ParamField::Angle => cspec.angle_range(),
            ParamField::Duration => {
                let (lo, hi) = cspec.duration_range;
                (lo as f64, hi as f64)
            }
        }
    }
}

/// One θ entry: the instruction it binds to and the field it sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSlot {
    /// Index into the template's structural instruction list.
    pub instruction: usize,
    pub field: ParamField,
}

/// Ordered descriptors for a template's flat parameter vector.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamLayout {
    slots: Vec<ParamSlot>,
}

impl ParamLayout {
    pub(crate) fn push(&mut self, instruction: usize, field: ParamField) -> usize {
        self.slots.push(ParamSlot { instruction, field });
        self.slots.len() - 1
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[ParamSlot] {
        &self.slots
    }

    pub fn fields(&self) -> Vec<ParamField> {
        self.slots.iter().map(|s| s.field).collect()
    }
}
