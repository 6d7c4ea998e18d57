//! The single-block transition table, derived from the state algebra.

use std::collections::BTreeMap;
use std::fmt;

use super::{left_incidence, transition, FrontierState, Mark};
use crate::model::{DepotLocation, Instance, PickLocation, WarehouseLayout};

/// Row labels (source states) in the conventional order.
pub const ROWS: [&str; 7] = ["UU1C", "E01C", "0E1C", "EE1C", "EE2C", "000C", "001C"];

/// Column labels (top count, bottom count).
pub const COLUMNS: [&str; 5] = ["11", "20", "02", "22", "00"];

/// The published single-block table, row by row, as `(target, vertical)`;
/// `None` marks an impossible transition.
pub const REFERENCE_TABLE: [[Option<(&str, &str)>; 5]; 7] = [
    [Some(("UU1C", "iv")), Some(("E01C", "i")), Some(("0E1C", "i")), Some(("EE1C", "i")), Some(("001C", "i"))],
    [Some(("UU1C", "i")), Some(("E01C", "ii")), None, Some(("EE2C", "iv")), Some(("001C", "ii"))],
    [Some(("UU1C", "i")), None, Some(("0E1C", "iii")), Some(("EE2C", "iv")), Some(("001C", "iii"))],
    [Some(("UU1C", "i")), Some(("EE1C", "iv")), Some(("0E1C", "iv")), Some(("EE1C", "iv")), Some(("001C", "iv"))],
    [Some(("UU1C", "i")), None, None, Some(("EE2C", "iv")), None],
    [Some(("UU1C", "i")), Some(("E01C", "ii")), Some(("0E1C", "iii")), Some(("EE2C", "iv")), Some(("001C", "iii"))],
    [None, None, None, None, Some(("001C", "vi"))],
];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TableCell {
    Invalid,
    Valid { target: String, vertical: String },
}

impl TableCell {
    fn from_reference(cell: Option<(&str, &str)>) -> Self {
        match cell {
            None => TableCell::Invalid,
            Some((target, vertical)) => TableCell::Valid { target: target.into(), vertical: vertical.into() },
        }
    }
}

impl fmt::Display for TableCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableCell::Invalid => f.write_str("-"),
            TableCell::Valid { target, vertical } => write!(f, "{target} ({vertical})"),
        }
    }
}

/// Map from `(source label, column label)` to the derived cell.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransitionTable {
    pub cells: BTreeMap<(String, String), TableCell>,
}

impl TransitionTable {
    pub fn get(&self, row: &str, column: &str) -> Option<&TableCell> {
        self.cells.get(&(row.to_string(), column.to_string()))
    }

    pub fn reference() -> Self {
        let mut cells = BTreeMap::new();
        for (r, row) in ROWS.iter().enumerate() {
            for (c, column) in COLUMNS.iter().enumerate() {
                cells.insert((row.to_string(), column.to_string()), TableCell::from_reference(REFERENCE_TABLE[r][c]));
            }
        }
        Self { cells }
    }
}

fn source_state(label: &str) -> FrontierState {
    use Mark::*;
    // marks are stored bottom first
    match label {
        "UU1C" => FrontierState::new(vec![Uneven, Uneven], &[Some(0), Some(0)], false),
        "E01C" => FrontierState::new(vec![Zero, Even], &[None, Some(0)], false),
        "0E1C" => FrontierState::new(vec![Even, Zero], &[Some(0), None], false),
        "EE1C" => FrontierState::new(vec![Even, Even], &[Some(0), Some(0)], false),
        "EE2C" => FrontierState::new(vec![Even, Even], &[Some(0), Some(1)], false),
        "000C" => FrontierState::empty(2),
        "001C" => FrontierState::closed(2),
        other => panic!("unknown single-block state {other}"),
    }
}

fn column_choice(label: &str) -> Vec<u8> {
    let digits: Vec<u8> = label.bytes().map(|b| b - b'0').collect();
    vec![digits[1], digits[0]]
}

/// The aisle each row is instantiated on: aisle 2 of a three-aisle block.
///
/// Live rows see picks at 3 and 7 (H = 10) with the depot elsewhere; the
/// empty row sees the same aisle holding the whole instance with the depot
/// at its bottom vertex; the closed row sees an empty aisle.
fn row_instance(label: &str) -> Instance {
    let layout = WarehouseLayout::new(3, 2, 1, 10).expect("valid layout");
    let here = |offset| PickLocation { aisle: 2, subaisle: 1, offset };
    let (depot, picks) = match label {
        "000C" => (DepotLocation { aisle: 2, cross_aisle: 1 }, vec![here(3), here(7)]),
        "001C" => (
            DepotLocation { aisle: 1, cross_aisle: 1 },
            vec![PickLocation { aisle: 1, subaisle: 1, offset: 5 }],
        ),
        _ => (DepotLocation { aisle: 1, cross_aisle: 1 }, vec![here(3), here(7)]),
    };
    Instance::new(layout, depot, picks).expect("valid instance")
}

/// Derives every single-block cell by running [`transition`] from each state
/// on a representative aisle.
pub fn derive_singleblock_table() -> TransitionTable {
    let mut cells = BTreeMap::new();
    for row in ROWS {
        let state = source_state(row);
        let instance = row_instance(row);
        let left = left_incidence(&state);
        for column in COLUMNS {
            let successors =
                transition(&state, &left, &column_choice(column), &instance, 2).expect("consistent inputs");
            let cell = match successors.first() {
                None => TableCell::Invalid,
                Some(s) => {
                    let vertical = s.resolution.pieces.iter().map(|(_, c)| c.roman()).collect::<Vec<_>>().join("+");
                    TableCell::Valid { target: s.target.label(), vertical }
                }
            };
            cells.insert((row.to_string(), column.to_string()), cell);
        }
    }
    TransitionTable { cells }
}

/// One cell where two tables differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableDiff {
    pub row: String,
    pub column: String,
    pub derived: TableCell,
    pub reference: TableCell,
}

/// Cells of `derived` that differ from the published table, in row-major order.
pub fn table_diff(derived: &TransitionTable) -> Vec<TableDiff> {
    let reference = TransitionTable::reference();
    let mut out = Vec::new();
    for row in ROWS {
        for column in COLUMNS {
            let d = derived.get(row, column).cloned().unwrap_or(TableCell::Invalid);
            let r = reference.get(row, column).cloned().expect("reference is complete");
            if d != r {
                out.push(TableDiff { row: row.into(), column: column.into(), derived: d, reference: r });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn valid(target: &str, vertical: &str) -> TableCell {
        TableCell::Valid { target: target.into(), vertical: vertical.into() }
    }

    #[test]
    fn source_labels_round_trip() {
        for row in ROWS {
            assert_eq!(source_state(row).label(), row);
        }
        assert_eq!(column_choice("20"), vec![0, 2]);
    }

    #[test]
    fn selected_cells() {
        let t = derive_singleblock_table();
        assert_eq!(t.get("UU1C", "11"), Some(&valid("UU1C", "iv")));
        assert_eq!(t.get("EE2C", "20"), Some(&TableCell::Invalid));
        assert_eq!(t.get("EE1C", "02"), Some(&valid("0E1C", "iv")));
        assert_eq!(t.get("EE1C", "20"), Some(&valid("E01C", "iv")));
        assert_eq!(t.get("000C", "00"), Some(&valid("001C", "iii")));
        assert_eq!(t.get("001C", "00"), Some(&valid("001C", "vi")));
    }

    #[test]
    fn single_disagreement() {
        let diff = table_diff(&derive_singleblock_table());
        assert_eq!(diff.len(), 1);
        assert_eq!((diff[0].row.as_str(), diff[0].column.as_str()), ("EE1C", "20"));
        assert_eq!(diff[0].reference, valid("EE1C", "iv"));
    }
}
