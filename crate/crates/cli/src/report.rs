use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Partial,
}

#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

impl Item {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Serialize) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: serde_json::to_value(detail).expect("serializable detail"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub status: Status,
    pub items: Vec<Item>,
    /// The only field that differs between identical runs.
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn status_of(items: &[Item]) -> Status {
        let passed = items.iter().filter(|i| i.passed).count();
        if passed == items.len() {
            Status::Pass
        } else if passed == 0 {
            Status::Fail
        } else {
            Status::Partial
        }
    }

    pub fn new(command: &str, parameters: BTreeMap<String, Value>, items: Vec<Item>, started: Instant) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            status: Self::status_of(&items),
            items,
            wall_time_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// `params!{"family" => x, "order" => y}` as a sorted JSON map.
#[macro_export]
macro_rules! params {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut m = ::std::collections::BTreeMap::new();
        $( m.insert($k.to_string(), ::serde_json::to_value(&$v).expect("serializable parameter")); )*
        m
    }};
}
