//! A link in one of the two supported ambients.

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::diagram::PlanarDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    /// The 3-ball, presented by planar diagrams.
    Disk,
    /// The solid torus, presented by closed braids.
    Annulus,
}

impl std::fmt::Display for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Ambient::Disk => "disk",
            Ambient::Annulus => "annulus",
        })
    }
}

impl std::str::FromStr for Ambient {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "disk" => Ok(Ambient::Disk),
            "annulus" => Ok(Ambient::Annulus),
            _ => Err(format!("unknown ambient {:?}", s)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Presentation {
    Disk(PlanarDiagram),
    Annulus(BraidWord),
}

impl Presentation {
    pub fn ambient(&self) -> Ambient {
        match self {
            Presentation::Disk(_) => Ambient::Disk,
            Presentation::Annulus(_) => Ambient::Annulus,
        }
    }

    pub fn singular_count(&self) -> usize {
        match self {
            Presentation::Disk(d) => d.singular().len(),
            Presentation::Annulus(w) => w.singular.len(),
        }
    }

    pub fn component_count(&self) -> usize {
        match self {
            Presentation::Disk(d) => d.component_count(),
            Presentation::Annulus(w) => w.closure_structure().cycles.len(),
        }
    }

    pub fn as_disk(&self) -> Option<&PlanarDiagram> {
        match self {
            Presentation::Disk(d) => Some(d),
            Presentation::Annulus(_) => None,
        }
    }

    pub fn as_annulus(&self) -> Option<&BraidWord> {
        match self {
            Presentation::Disk(_) => None,
            Presentation::Annulus(w) => Some(w),
        }
    }
}

impl From<PlanarDiagram> for Presentation {
    fn from(d: PlanarDiagram) -> Self {
        Presentation::Disk(d)
    }
}

impl From<BraidWord> for Presentation {
    fn from(w: BraidWord) -> Self {
        Presentation::Annulus(w)
    }
}

impl Presentation {
    /// Disk diagrams as their JSON object, closed braids as braid text.
    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            Presentation::Disk(d) => serde_json::to_value(d.to_raw()).expect("diagram serializes"),
            Presentation::Annulus(w) => serde_json::Value::String(w.to_string()),
        }
    }

    /// Accepts braid text, a braid object `{"strands", "word"}` or a diagram
    /// object.
    pub fn from_json_value(v: &serde_json::Value) -> Result<Self, String> {
        match v {
            serde_json::Value::String(s) => s
                .parse::<BraidWord>()
                .map(Presentation::Annulus)
                .map_err(|e| e.to_string()),
            serde_json::Value::Object(m) if m.contains_key("strands") => {
                let w: BraidWord = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
                w.check().map_err(|e| e.to_string())?;
                Ok(Presentation::Annulus(w))
            }
            serde_json::Value::Object(_) => PlanarDiagram::from_json(&v.to_string())
                .map(Presentation::Disk)
                .map_err(|e| e.to_string()),
            _ => Err("expected a diagram object or braid text".into()),
        }
    }

    pub fn writhe(&self) -> i64 {
        match self {
            Presentation::Disk(d) => d.writhe(),
            Presentation::Annulus(w) => w.writhe(),
        }
    }
}

impl std::fmt::Display for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Presentation::Disk(d) => write!(f, "{}", d.to_json()),
            Presentation::Annulus(w) => write!(f, "{}", w),
        }
    }
}
