//! JSON form of a presentation, used for `--space-file`:
//!
//! ```json
//! {"name": "tetra",
//!  "lattice": [["1/1","0/1","0/1"], ...],
//!  "reps": [{"rot": [[...],[...],[...]], "trans": ["0/1","0/1","1/2"]}, ...]}
//! ```

use serde::{Deserialize, Serialize};

use super::{GroupError, Isometry, Lattice, PlatycosmPresentation};
use crate::exact::{self, Mat3, Vec3};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceDoc {
    name: String,
    lattice: [[String; 3]; 3],
    reps: Vec<RepDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepDoc {
    rot: [[String; 3]; 3],
    trans: [String; 3],
}

fn render_vec(v: &Vec3) -> [String; 3] {
    v.map(|x| exact::format_pq(&x))
}

fn render_mat(m: &Mat3) -> [[String; 3]; 3] {
    m.map(|r| render_vec(&r))
}

fn parse_vec(v: &[String; 3]) -> Result<Vec3, GroupError> {
    let mut out = exact::zero_vec();
    for (o, s) in out.iter_mut().zip(v) {
        *o = exact::parse_rational(s).map_err(|e| GroupError::Document(e.to_string()))?;
    }
    Ok(out)
}

fn parse_mat(m: &[[String; 3]; 3]) -> Result<Mat3, GroupError> {
    Ok([parse_vec(&m[0])?, parse_vec(&m[1])?, parse_vec(&m[2])?])
}

impl PlatycosmPresentation {
    pub fn to_json(&self) -> String {
        let doc = SpaceDoc {
            name: self.name().to_string(),
            lattice: render_mat(self.lattice().basis()),
            reps: self
                .reps()
                .iter()
                .map(|g| RepDoc {
                    rot: render_mat(g.rot()),
                    trans: render_vec(g.trans()),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain strings serialize")
    }

    /// Parses and fully validates a space document.
    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        let doc: SpaceDoc =
            serde_json::from_str(text).map_err(|e| GroupError::Document(e.to_string()))?;
        let basis = parse_mat(&doc.lattice)?;
        let lattice = Lattice::new(basis)?;
        let reps = doc
            .reps
            .iter()
            .map(|r| Isometry::new(parse_mat(&r.rot)?, parse_vec(&r.trans)?))
            .collect::<Result<Vec<_>, _>>()?;
        PlatycosmPresentation::new(doc.name, lattice, reps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid_group::Preset;

    #[test]
    fn presets_roundtrip() {
        for p in Preset::ALL {
            let pres = p.presentation();
            let back = PlatycosmPresentation::from_json(&pres.to_json()).unwrap();
            assert_eq!(back.name(), pres.name());
            assert_eq!(back.reps(), pres.reps());
            assert!(back.lattice().same_as(pres.lattice()));
        }
    }

    #[test]
    fn renders_p_over_q() {
        let text = Preset::Tetra.presentation().to_json();
        assert!(text.contains("\"1/2\""));
        assert!(text.contains("\"-1/1\""));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(
            PlatycosmPresentation::from_json("{\"name\": 3}"),
            Err(GroupError::Document(_))
        ));
        let bad_rational = Preset::Tetra.presentation().to_json().replace("1/2", "1/x");
        assert!(matches!(
            PlatycosmPresentation::from_json(&bad_rational),
            Err(GroupError::Document(_))
        ));
        let bad_rot = Preset::Tetra.presentation().to_json().replacen("\"-1/1\"", "\"-2/1\"", 1);
        assert_eq!(PlatycosmPresentation::from_json(&bad_rot).unwrap_err(), GroupError::NotOrthogonal);
    }
}
