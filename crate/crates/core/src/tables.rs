//! Regeneration of the small reference tables from first principles.

use serde_json::{json, Value};

use crate::anf::Basis;
use crate::boolvec::{BoolVec, Convention};
use crate::error::Result;
use crate::modular::Modulus;
use crate::theory::{self, AncestorFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum TableId {
    #[value(name = "4.2")]
    BooleanAverages,
    #[value(name = "4.3")]
    PolynomialsV,
    #[value(name = "4.4")]
    PolynomialsW,
    #[value(name = "4.5")]
    PolynomialsY,
    #[value(name = "5.1")]
    ParentalPairs,
    #[value(name = "5.2")]
    AncestorFamilies,
}

impl TableId {
    pub const ALL: [TableId; 6] = [
        TableId::BooleanAverages,
        TableId::PolynomialsV,
        TableId::PolynomialsW,
        TableId::PolynomialsY,
        TableId::ParentalPairs,
        TableId::AncestorFamilies,
    ];

    pub fn id(self) -> &'static str {
        match self {
            TableId::BooleanAverages => "4.2",
            TableId::PolynomialsV => "4.3",
            TableId::PolynomialsW => "4.4",
            TableId::PolynomialsY => "4.5",
            TableId::ParentalPairs => "5.1",
            TableId::AncestorFamilies => "5.2",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub text: String,
    pub json: Value,
}

impl Cell {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Cell {
            text: text.into(),
            json,
        }
    }

    fn plain(text: impl Into<String>) -> Self {
        let text = text.into();
        Cell {
            json: Value::String(text.clone()),
            text,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub id: &'static str,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    /// Columns padded to a common width and separated by ` | `.
    pub fn to_text(&self) -> String {
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|c| {
                let body = self.rows.iter().map(|r| r[c].text.chars().count());
                body.chain([self.columns[c].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:<w$}"))
                .collect();
            padded.join(" | ").trim_end().to_string()
        };
        let mut out = format!("Table {}. {}\n", self.id, self.title);
        out.push_str(&line(self.columns.iter().map(String::as_str).collect()));
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&rule.join("-+-"));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row.iter().map(|c| c.text.as_str()).collect()));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<Value>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.json.clone()).collect())
            .collect();
        json!({ "table": self.id, "title": self.title, "columns": self.columns, "rows": rows })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("writing to memory");
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.text.as_str()))
                .expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is UTF-8")
    }
}

pub fn build(which: TableId) -> Result<Table> {
    match which {
        TableId::BooleanAverages => boolean_averages(),
        TableId::PolynomialsV => polynomials(which, Basis::V, 3..=5),
        TableId::PolynomialsW => polynomials(which, Basis::W, 3..=6),
        TableId::PolynomialsY => polynomials(which, Basis::Y, 3..=6),
        TableId::ParentalPairs => parental_pairs(),
        TableId::AncestorFamilies => ancestor_families(),
    }
}

fn bits_json(v: &BoolVec) -> Value {
    json!(v.coordinates().iter().map(|&b| b as u8).collect::<Vec<_>>())
}

fn boolean_averages() -> Result<Table> {
    let m = Modulus::new(3)?;
    let mut rows = Vec::new();
    // Rows in lexicographic order with v_0 as the leading digit.
    for word in 0u64..8 {
        let coords: Vec<bool> = (0..3).map(|i| word >> (2 - i) & 1 == 1).collect();
        let v = BoolVec::from_coordinates(m, Convention::NonNeg, &coords)?;
        let rhythm = v.btoi()?;
        let averaged = rhythm.iav();
        let image = v.bav();
        rows.push(vec![
            Cell::new(v.to_string(), bits_json(&v)),
            Cell::new(rhythm.to_string(), json!(rhythm.values())),
            Cell::new(averaged.to_string(), json!(averaged.values())),
            Cell::new(image.to_string(), bits_json(&image)),
        ]);
    }
    Ok(Table {
        id: TableId::BooleanAverages.id(),
        title: "Boolean averages of three-dimensional vectors".into(),
        columns: ["v", "BtoI(v)", "Iav(BtoI(v))", "Bav(v)"]
            .map(String::from)
            .to_vec(),
        rows,
    })
}

fn polynomials(
    which: TableId,
    basis: Basis,
    range: std::ops::RangeInclusive<u32>,
) -> Result<Table> {
    let mut rows = Vec::new();
    for n in range {
        let poly = theory::enumerated_bav0(Modulus::new(n)?)?.to_basis(basis)?;
        rows.push(vec![
            Cell::new(n.to_string(), json!(n)),
            Cell::new(poly.to_text(), poly.to_json()),
        ]);
    }
    let index_set = match basis.convention() {
        Convention::NonNeg => "Z_N",
        Convention::Signed => "Z_{N,±}",
    };
    Ok(Table {
        id: which.id(),
        title: format!(
            "Bav_N^0 in variables {}_i, i in {index_set}",
            basis.letter()
        ),
        columns: vec!["N".into(), "Bav_N^0".into()],
        rows,
    })
}

fn parental_pairs() -> Result<Table> {
    let mut rows = Vec::new();
    for n in 3..=6 {
        let pairs = theory::parental_pairs(Modulus::new(n)?);
        let text: Vec<String> = pairs.iter().map(|p| p.to_string()).collect();
        let values: Vec<Value> = pairs.iter().map(|p| p.to_json()).collect();
        rows.push(vec![
            Cell::new(n.to_string(), json!(n)),
            Cell::new(text.join(", "), Value::Array(values)),
        ]);
    }
    Ok(Table {
        id: TableId::ParentalPairs.id(),
        title: "Par_N for N=3,4,5,6".into(),
        columns: vec!["N".into(), "Par_N".into()],
        rows,
    })
}

fn ancestor_families() -> Result<Table> {
    let m = Modulus::new(6)?;
    let pairs = theory::parental_pairs(m);
    // Widest interval first, the singleton family last.
    let order = pairs.iter().skip(1).rev().chain(pairs.first());
    let mut rows = Vec::new();
    let mut total = 0u64;
    for (row, pair) in order.enumerate() {
        let family = AncestorFamily::new(*pair);
        let members = family.enumerate()?;
        let count = members.len() as u64;
        debug_assert_eq!(count, family.count());
        total += count;
        let (a, b) = (pair.a(), pair.b());
        let description = if pair.is_zero_pair() {
            format!("{{{}}}", members[0])
        } else if count == 1 {
            format!("{{e_[{a},{b}]}}")
        } else {
            format!("pr_[{a},{b}]^-1({{e_[{a},{b}]}})")
        };
        let listed: Vec<Value> = members.iter().map(bits_json).collect();
        rows.push(vec![
            Cell::plain(format!("({})", row + 1)),
            Cell::new(
                description,
                json!({ "pair": pair.to_json(), "members": listed }),
            ),
            Cell::new(count.to_string(), json!(count)),
        ]);
    }
    rows.push(vec![
        Cell::plain("Total"),
        Cell::new("", Value::Null),
        Cell::new(format!("{total}(=2^{{6-1}})"), json!(total)),
    ]);
    Ok(Table {
        id: TableId::AncestorFamilies.id(),
        title: "Six families of the B-ancestors of zero for N=6".into(),
        columns: [
            "name",
            "B-ancestors of zero in B_{6,±}",
            "number of elements",
        ]
        .map(String::from)
        .to_vec(),
        rows,
    })
}
