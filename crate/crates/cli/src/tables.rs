//! Printed reference tables: inputs, seeds and the published digits.
//!
//! Rows on the negative axis list `x` as the magnitude of the argument and
//! `y` as `−W(−x)`, matching the published layout.

use clap::ValueEnum;
use lwq_core::{Branch, Method};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableId {
    #[value(name = "t3.1")]
    T3_1,
    #[value(name = "t3.2")]
    T3_2,
    #[value(name = "t4.1")]
    T4_1,
    #[value(name = "t4.2")]
    T4_2,
    #[value(name = "t5.1")]
    T5_1,
    #[value(name = "t5.2")]
    T5_2,
    #[value(name = "t5.3")]
    T5_3,
    #[value(name = "figdata")]
    FigData,
}

impl TableId {
    pub fn name(self) -> &'static str {
        match self {
            TableId::T3_1 => "t3.1",
            TableId::T3_2 => "t3.2",
            TableId::T4_1 => "t4.1",
            TableId::T4_2 => "t4.2",
            TableId::T5_1 => "t5.1",
            TableId::T5_2 => "t5.2",
            TableId::T5_3 => "t5.3",
            TableId::FigData => "figdata",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Input {
    Value(f64),
    /// `10^k` given only through its logarithm.
    PowTen(f64),
}

#[derive(Debug, Clone, Copy)]
pub struct RowSpec {
    pub label: &'static str,
    pub x: Input,
    pub negative: bool,
    pub seed: f64,
    pub branch: Branch,
    pub method: Method,
    /// Printed iterates after each correction; empty where none was applied.
    pub printed: [&'static str; 4],
    /// Printed final value.
    pub printed_y: &'static str,
    /// Value the row is judged against.
    pub reference_y: &'static str,
}

const P: Branch = Branch::Principal;
const S: Branch = Branch::Secondary;

#[allow(clippy::too_many_arguments)]
const fn row(
    label: &'static str,
    x: f64,
    negative: bool,
    seed: f64,
    branch: Branch,
    method: Method,
    printed: [&'static str; 4],
    printed_y: &'static str,
    reference_y: &'static str,
) -> RowSpec {
    RowSpec {
        label,
        x: Input::Value(x),
        negative,
        seed,
        branch,
        method,
        printed,
        printed_y,
        reference_y,
    }
}

const fn pos(
    label: &'static str,
    x: f64,
    seed: f64,
    method: Method,
    printed: [&'static str; 4],
    y: &'static str,
    reference: &'static str,
) -> RowSpec {
    row(label, x, false, seed, P, method, printed, y, reference)
}

#[allow(clippy::too_many_arguments)]
const fn neg(
    label: &'static str,
    x: f64,
    seed: f64,
    branch: Branch,
    method: Method,
    printed: [&'static str; 4],
    y: &'static str,
    reference: &'static str,
) -> RowSpec {
    row(label, x, true, seed, branch, method, printed, y, reference)
}

use Method::{M1, M2};

const T3_1: &[RowSpec] = &[
    pos(
        "1",
        1e-5,
        1.0,
        M1,
        ["1.00000999995", "", "", ""],
        "9.9999e-6",
        "9.9999e-6",
    ),
    pos(
        "2",
        0.1,
        1.0,
        M1,
        ["1.0956356", "1.0955719", "", ""],
        ".09127653",
        ".09127653",
    ),
    pos(
        "3",
        0.5,
        1.0,
        M1,
        ["1.4252391", "1.4215299", "", ""],
        ".35173371",
        ".3517337",
    ),
    pos(
        "4",
        1.0,
        1.0,
        M1,
        ["1.7807764", "1.7632227", "1.7632228", ""],
        ".56714329",
        ".56714329",
    ),
    pos(
        "5",
        100.0,
        1.0,
        M1,
        ["51.962237", "29.437158", "29.536569", "29.53659905"],
        "3.38563014",
        "3.38563014",
    ),
    pos(
        "6",
        1e5,
        1.0,
        M1,
        ["50001.99996", "10510.1993", "10770.5576", "10770.55638"],
        "9.2845715",
        "9.2845714",
    ),
    pos(
        "7",
        1e20,
        1.0,
        M1,
        ["5e19", "2.297042e18", "2.36324704e18", "2.363688732e18"],
        "42.306755092",
        "42.306755092",
    ),
];

const T3_2: &[RowSpec] = &[
    pos(
        "1",
        1e-5,
        1e-5,
        M2,
        ["9.9999e-6", "", "", ""],
        "9.9999e-6",
        "9.9999e-6",
    ),
    pos(
        "2",
        1e-2,
        1e-2,
        M2,
        [".00990147305", ".00990147384", "", ""],
        ".00990147384",
        ".00990147384",
    ),
    pos(
        "3",
        1e-1,
        1e-1,
        M2,
        [".09127122105", ".09127653616", ".0912765271", ""],
        ".0912765271",
        ".09127652716",
    ),
    pos(
        "4",
        1.0,
        1.0,
        M2,
        [".5615528128", ".5671433197", ".56714329", ""],
        ".56714329",
        ".56714329",
    ),
    pos(
        "5",
        1e2,
        1.0,
        M2,
        ["3.49503992", "3.385628701", "3.38563014", ""],
        "3.38563014",
        "3.3856301403",
    ),
    pos(
        "6",
        1e5,
        1.0,
        M2,
        ["9.880553811", "9.28455331", "9.284571428", ""],
        "9.284571428",
        "9.2845714286",
    ),
    pos(
        "7",
        1e10,
        1.0,
        M2,
        ["21.20598257", "20.02867132", "20.02868541", ""],
        "20.02868541",
        "20.028685413",
    ),
    pos(
        "8",
        1e20,
        1.0,
        M2,
        ["44.14031445", "42.3067489", "42.30675509", ""],
        "42.30675509",
        "42.306755096",
    ),
    pos(
        "9",
        1e50,
        1.0,
        M2,
        ["113.16429118", "110.4249176", "110.4249188", ""],
        "110.4249188",
        "110.42491883",
    ),
    RowSpec {
        label: "10",
        x: Input::PowTen(500.0),
        negative: false,
        seed: 1.0,
        branch: P,
        method: M2,
        printed: ["688.7813268", "684.2625008", "684.2472086", ""],
        printed_y: "684.2472086",
        reference_y: "684.2472086",
    },
];

const T4_1: &[RowSpec] = &[
    neg(
        "1a",
        0.365,
        2.0,
        S,
        M1,
        ["2.956051512", "3.097484097", "3.09768805", ""],
        "1.130656043",
        "1.1306553125",
    ),
    neg(
        "1b",
        0.365,
        2.0,
        P,
        M1,
        ["2.422430039", "2.410565801", "2.410465598", ""],
        ".879819923",
        ".879819986",
    ),
    neg(
        "2a",
        0.25,
        2.0,
        S,
        M1,
        ["7.35020321", "8.610707527", "8.613169456", ""],
        "2.153292364",
        "2.153292364",
    ),
    neg(
        "2b",
        0.25,
        2.0,
        P,
        M1,
        ["1.422385512", "1.429611849", "1.429611805", ""],
        ".3574029424",
        ".3574029562",
    ),
    // the printed "actual" cell of this row repeats another table's value
    neg(
        "3a",
        0.1,
        2.0,
        S,
        M1,
        ["23.83488834", "35.94782488", "35.77152074", ""],
        "3.577152067",
        "3.577152067",
    ),
    neg(
        "3b",
        0.1,
        2.0,
        P,
        M1,
        ["1.096588361", "1.118326385", "1.118325592", ""],
        ".1118325595",
        ".1118325592",
    ),
    neg(
        "4a",
        1e-3,
        2.0,
        S,
        M1,
        ["2689.157469", "8974.76983", "9118.006099", ""],
        "9.11800643",
        "9.11800647",
    ),
    neg(
        "4b",
        1e-3,
        2.0,
        P,
        M1,
        [".971574359", "1.001003721", "1.001001503", ""],
        ".0010010018",
        ".0010010015",
    ),
];

const T4_2: &[RowSpec] = &[
    neg(
        "1a",
        0.365,
        1.0,
        S,
        M2,
        ["1.129352923", "1.130655313", "1.130655313", ""],
        "1.130655313",
        "1.130655313",
    ),
    neg(
        "1b",
        0.365,
        1.0,
        P,
        M2,
        ["0.7570090661", "0.882015716", "0.879820082", ""],
        "0.879820082",
        "0.879820092",
    ),
    neg(
        "2a",
        0.1,
        1.0,
        S,
        M2,
        ["3.39179597", "3.57713465", "3.577152064", ""],
        "3.577152064",
        "3.577152064",
    ),
    neg(
        "2b",
        0.1,
        0.1,
        P,
        M2,
        ["0.1118472693", "0.1118325592", "", ""],
        "0.1118325592",
        "0.1118325592",
    ),
    neg(
        "3a",
        1e-3,
        1e-3,
        S,
        M2,
        ["8.486085012", "9.117971815", "9.118006532", ""],
        "9.118006532",
        "9.11800647",
    ),
    neg(
        "3b",
        1e-3,
        1e-3,
        P,
        M2,
        ["0.00100100150", "", "", ""],
        "0.00100100150",
        "0.00100100150",
    ),
];

const T5_1: &[RowSpec] = &[
    pos(
        "1",
        1e5,
        1.0,
        M1,
        ["50001.99996", "10510.1993", "10770.5576", "10770.55638"],
        "9.284571429",
        "9.284571429",
    ),
    pos(
        "2",
        1e5,
        10.0,
        M1,
        ["49574.91369", "10573.99124", "10770.55692", "10770.55638"],
        "9.284571429",
        "9.284571429",
    ),
    pos(
        "3",
        1e5,
        1e2,
        M1,
        ["15199.81914", "10767.02713", "10770.55638", ""],
        "9.284571429",
        "9.284571429",
    ),
    pos(
        "4",
        1e5,
        1e3,
        M1,
        ["11639.69298", "10770.51561", "10770.55638", ""],
        "9.284571429",
        "9.284571429",
    ),
    pos(
        "5",
        1e5,
        1e4,
        M1,
        ["10770.59206", "10770.55638", "", ""],
        "9.284571429",
        "9.284571429",
    ),
    pos(
        "6",
        1e5,
        1e5,
        M1,
        ["10120.89002", "10770.57739", "10770.55638", ""],
        "9.284571429",
        "9.284571429",
    ),
    pos(
        "7",
        1e5,
        1e6,
        M1,
        ["8439.5434", "10771.81686", "10770.55638", ""],
        "9.284571429",
        "9.284571429",
    ),
    pos(
        "8",
        1e5,
        1e12,
        M1,
        ["12000", "10770.44626", "10770.55638", ""],
        "9.284571429",
        "9.284571429",
    ),
];

const T5_2: &[RowSpec] = &[
    neg(
        "1",
        0.1,
        0.3,
        S,
        M1,
        ["6.079140914", "31.59402227", "35.76931211", "35.77152064"],
        "3.577152064",
        "3.577152064",
    ),
    neg(
        "2",
        0.1,
        1e3,
        S,
        M1,
        ["51.019259", "35.82203151", "35.77152064", ""],
        "3.577152064",
        "3.577152064",
    ),
    neg(
        "3",
        0.1,
        1e9,
        S,
        M1,
        ["180", "39.0621895", "35.77230776", "35.77152064"],
        "3.577152064",
        "3.577152064",
    ),
];

const T5_3: &[RowSpec] = &[
    neg(
        "1",
        0.1,
        0.3,
        P,
        M1,
        ["1.58113103", "1.113880206", "1.118325962", "1.118325598"],
        "0.1118325649",
        "0.1118325592",
    ),
    neg(
        "2",
        0.1,
        5.0,
        P,
        M1,
        ["0.641251085", "1.137654313", "1.118325064", "1.118325591"],
        "0.1118325586",
        "0.1118325592",
    ),
];

/// Arguments whose `M1` iterates from `z = 1` are plotted, with the printed
/// ordinates where they exist.
pub const FIG_DATA: &[(f64, [&str; 5])] = &[
    (0.1, ["1", "1.0956356", "1.0955719", "", ""]),
    (0.5, ["1", "1.4252391", "1.4215299", "", ""]),
    (1.0, ["1", "1.7807764", "1.7632227", "1.7632228", ""]),
    (
        100.0,
        ["1", "51.962237", "29.437158", "29.536569", "29.53659905"],
    ),
    (
        1e5,
        [
            "1",
            "50001.99996",
            "10510.1993",
            "10770.5576",
            "10770.55638",
        ],
    ),
];

pub fn rows(id: TableId) -> &'static [RowSpec] {
    match id {
        TableId::T3_1 => T3_1,
        TableId::T3_2 => T3_2,
        TableId::T4_1 => T4_1,
        TableId::T4_2 => T4_2,
        TableId::T5_1 => T5_1,
        TableId::T5_2 => T5_2,
        TableId::T5_3 => T5_3,
        TableId::FigData => &[],
    }
}

/// Parses a printed cell; empty cells are `None`.
pub fn printed(s: &str) -> Option<f64> {
    if s.is_empty() {
        None
    } else {
        Some(s.parse().expect("printed digits are valid numbers"))
    }
}
