use serde::{Deserialize, Serialize};

use super::FamilyError;
use crate::polyx::{Poly, Rational};

/// One named root of a template polynomial. `location: None` marks the
/// slot solved for by a tangency search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSlot {
    pub name: String,
    #[serde(default, with = "opt_rat")]
    pub location: Option<Rational>,
    pub multiplicity: usize,
}

/// Roots listed in strictly increasing order; consecutive slots carry the
/// ordering constraints of the ladder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootPattern {
    pub slots: Vec<RootSlot>,
}

impl RootPattern {
    pub fn slot(name: &str, location: Option<Rational>, multiplicity: usize) -> RootSlot {
        RootSlot {
            name: name.to_string(),
            location,
            multiplicity,
        }
    }

    /// Checks multiplicities, name uniqueness, at most one free slot and
    /// strictly increasing fixed locations.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let bad = |msg: String| Err(FamilyError::PatternNotAchieved(msg));
        if self.slots.is_empty() {
            return bad("empty root pattern".into());
        }
        for (i, s) in self.slots.iter().enumerate() {
            if s.multiplicity == 0 {
                return bad(format!("slot {} has multiplicity 0", s.name));
            }
            if self.slots[..i].iter().any(|o| o.name == s.name) {
                return bad(format!("slot name {} repeats", s.name));
            }
        }
        if self.free_slot_count() > 1 {
            return bad("at most one slot may be free".into());
        }
        let fixed: Vec<&Rational> = self
            .slots
            .iter()
            .filter_map(|s| s.location.as_ref())
            .collect();
        if fixed.windows(2).any(|w| w[0] >= w[1]) {
            return bad("fixed locations must increase strictly".into());
        }
        Ok(())
    }

    pub fn free_slot_count(&self) -> usize {
        self.slots.iter().filter(|s| s.location.is_none()).count()
    }

    pub fn free_index(&self) -> Option<usize> {
        self.slots.iter().position(|s| s.location.is_none())
    }

    pub fn degree(&self) -> usize {
        self.slots.iter().map(|s| s.multiplicity).sum()
    }

    /// Product over the fixed slots.
    pub fn fixed_part(&self) -> Poly {
        Poly::from_roots(
            self.slots
                .iter()
                .filter_map(|s| s.location.as_ref().map(|r| (r, s.multiplicity))),
        )
    }

    /// The template with the free slot set to `value`, if the ladder order
    /// is respected.
    pub fn resolved(&self, value: &Rational) -> Option<RootPattern> {
        let mut out = self.clone();
        if let Some(i) = self.free_index() {
            out.slots[i].location = Some(value.clone());
        }
        let locs: Vec<&Rational> = out
            .slots
            .iter()
            .map(|s| s.location.as_ref().unwrap())
            .collect();
        locs.windows(2).all(|w| w[0] < w[1]).then_some(out)
    }
}

mod opt_rat {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::polyx::{parse_rational, rat_to_string, Rational};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&rat_to_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let v = Option::<serde_json::Value>::deserialize(d)?;
        match v {
            None | Some(serde_json::Value::Null) => Ok(None),
            Some(serde_json::Value::String(s)) => parse_rational(&s)
                .map(Some)
                .map_err(serde::de::Error::custom),
            Some(other) => parse_rational(&other.to_string())
                .map(Some)
                .map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyx::{rat, ratio};

    #[test]
    fn validation_and_resolution() {
        let p = RootPattern {
            slots: vec![
                RootPattern::slot("free", None, 1),
                RootPattern::slot("b1", Some(rat(1)), 2),
                RootPattern::slot("a", Some(rat(2)), 1),
            ],
        };
        p.validate().unwrap();
        assert_eq!(p.degree(), 4);
        assert!(p.resolved(&ratio(1, 2)).is_some());
        assert!(p.resolved(&ratio(3, 2)).is_none());

        let mut bad = p.clone();
        bad.slots[2].location = Some(rat(1));
        assert!(bad.validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"slots":[{"name":"y1","location":"1","multiplicity":2},{"name":"a","location":"5/2","multiplicity":1}]}"#;
        let p: RootPattern = serde_json::from_str(text).unwrap();
        assert_eq!(p.slots[1].location, Some(ratio(5, 2)));
        let back: RootPattern = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
