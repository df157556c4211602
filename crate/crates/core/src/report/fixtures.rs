//! The 51 nonsingular infinite-group step sets: excursion prefixes,
//! printed asymptotics and minimal polynomials.

use crate::poly::{parse_int_poly, IntPoly};
use num_bigint::BigInt;
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    /// Row label, `"23"` or `"7*"` for periodic rows.
    pub tag: String,
    pub number: u32,
    pub periodic: bool,
    /// `e_0..e_8`.
    pub sequence: Vec<BigInt>,
    /// Printed growth constant, e.g. `"4.729032"`.
    pub rho_decimal: String,
    /// Printed exponent `|alpha|`, e.g. `"3.320192"`.
    pub alpha_decimal: String,
    /// Label of the minimal-polynomial row holding this tag, e.g. `"(3,6)"`.
    pub group: String,
    pub mu_rho_text: String,
    pub mu_c_text: String,
    /// Denominators cleared.
    pub mu_rho: IntPoly,
    pub mu_c: IntPoly,
}

/// One row of the minimal-polynomial table, blanks already inherited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRow {
    pub label: String,
    pub members: Vec<u32>,
    pub mu_rho_text: String,
    pub mu_c_text: String,
    pub mu_rho: IntPoly,
    pub mu_c: IntPoly,
}

type Row1 = (u32, bool, [u64; 9], &'static str, &'static str);

#[rustfmt::skip]
const TABLE1: &[Row1] = &[
    (3, false, [1, 0, 1, 2, 2, 13, 21, 67, 231], "3.799605", "2.610604"),
    (4, false, [1, 0, 0, 2, 2, 0, 16, 44, 28], "3.608079", "2.720448"),
    (5, false, [1, 0, 1, 2, 2, 14, 21, 76, 252], "3.799605", "2.318862"),
    (6, false, [1, 0, 1, 2, 2, 13, 21, 67, 231], "3.799605", "2.610604"),
    (7, true, [1, 0, 1, 0, 4, 0, 29, 0, 230], "3.800378", "2.521116"),
    (8, false, [1, 0, 1, 1, 2, 7, 10, 38, 89], "3.799605", "3.637724"),
    (9, false, [1, 0, 1, 1, 2, 7, 10, 38, 89], "3.799605", "3.637724"),
    (10, false, [1, 0, 0, 1, 2, 0, 5, 26, 28], "3.608079", "3.388025"),
    (11, true, [1, 0, 0, 0, 2, 0, 6, 0, 42], "3.800378", "3.918957"),
    (12, false, [1, 0, 0, 1, 0, 1, 5, 1, 18], "3.799605", "5.136154"),
    (14, false, [1, 0, 0, 1, 2, 0, 5, 26, 28], "3.608079", "3.388025"),
    (16, false, [1, 0, 1, 2, 2, 14, 21, 76, 252], "3.799605", "2.318862"),
    (17, true, [1, 0, 1, 0, 4, 0, 29, 0, 230], "3.800378", "2.521116"),
    (18, false, [1, 0, 0, 2, 2, 0, 16, 44, 28], "3.608079", "2.720448"),
    (19, true, [1, 0, 0, 0, 2, 0, 6, 0, 42], "3.800378", "3.918957"),
    (20, false, [1, 0, 1, 2, 4, 14, 45, 120, 468], "4.372923", "2.482876"),
    (21, false, [1, 0, 1, 1, 4, 7, 25, 64, 201], "4.214757", "3.347502"),
    (23, false, [1, 0, 2, 1, 10, 14, 75, 178, 738], "4.729032", "3.320192"),
    (24, false, [1, 0, 2, 2, 10, 26, 86, 312, 1022], "4.729032", "2.757466"),
    (25, false, [1, 0, 2, 2, 11, 27, 101, 348, 1237], "4.729032", "2.397625"),
    (26, false, [1, 0, 2, 2, 11, 27, 101, 348, 1237], "4.729032", "2.397625"),
    (27, true, [1, 0, 2, 0, 13, 0, 124, 0, 1427], "4.569086", "2.503534"),
    (28, false, [1, 0, 1, 2, 4, 13, 36, 111, 343], "4.214757", "2.742114"),
    (29, true, [1, 0, 1, 0, 5, 0, 35, 0, 313], "4.569086", "3.985964"),
    (30, false, [1, 0, 1, 1, 6, 17, 58, 202, 749], "5", "2.722859"),
    (31, false, [1, 0, 0, 1, 2, 1, 11, 27, 60], "4.372923", "4.070925"),
    (32, true, [1, 0, 2, 0, 13, 0, 124, 0, 1427], "4.569086", "2.503534"),
    (33, false, [1, 0, 1, 1, 4, 7, 25, 64, 201], "4.214757", "3.347502"),
    (34, true, [1, 0, 1, 0, 5, 0, 35, 0, 313], "4.569086", "3.985964"),
    (35, false, [1, 0, 1, 1, 3, 8, 19, 65, 177], "4.729032", "4.514931"),
    (36, false, [1, 0, 0, 1, 2, 1, 11, 27, 60], "4.372923", "4.070925"),
    (37, false, [1, 0, 1, 2, 4, 13, 36, 111, 343], "4.214757", "2.742114"),
    (38, false, [1, 0, 2, 2, 10, 26, 86, 312, 1022], "4.729032", "2.757466"),
    (39, false, [1, 0, 1, 1, 3, 8, 19, 65, 177], "4.729032", "4.514931"),
    (40, false, [1, 0, 0, 2, 4, 8, 28, 108, 372], "5", "3.383396"),
    (41, false, [1, 0, 1, 2, 4, 14, 45, 120, 468], "4.372923", "2.482876"),
    (42, false, [1, 0, 0, 2, 4, 8, 28, 108, 372], "5", "3.383396"),
    (43, false, [1, 0, 2, 2, 13, 27, 140, 392, 1882], "5.064419", "2.491053"),
    (44, false, [1, 0, 2, 3, 15, 51, 208, 893, 3841], "5.891838", "2.679783"),
    (45, false, [1, 0, 1, 1, 5, 8, 40, 91, 406], "5.064419", "4.036441"),
    (46, false, [1, 0, 1, 2, 8, 22, 101, 364, 1618], "5.799605", "2.959600"),
    (47, false, [1, 0, 1, 3, 7, 29, 101, 404, 1657], "5.891838", "3.471058"),
    (48, false, [1, 0, 1, 1, 5, 8, 40, 91, 406], "5.064419", "4.036441"),
    (49, false, [1, 0, 2, 2, 13, 27, 140, 392, 1882], "5.064419", "2.491053"),
    (50, false, [1, 0, 2, 3, 15, 51, 208, 893, 3841], "5.891838", "2.679783"),
    (51, false, [1, 0, 1, 3, 7, 29, 101, 404, 1657], "5.891838", "3.471058"),
    (52, false, [1, 0, 1, 1, 8, 18, 90, 301, 1413], "5.799605", "3.042101"),
    (53, false, [1, 0, 1, 2, 8, 22, 101, 364, 1618], "5.799605", "2.959600"),
    (54, false, [1, 0, 3, 5, 30, 111, 548, 2586, 13087], "6.729032", "2.667986"),
    (55, false, [1, 0, 2, 4, 16, 64, 266, 1210, 5630], "6.729032", "3.497037"),
    (56, false, [1, 0, 2, 4, 16, 64, 266, 1210, 5630], "6.729032", "3.497037"),
];

/// `(members, mu_rho, mu_c)`; an empty string repeats the entry above
/// within the same block.
type Row2 = (&'static [u32], &'static str, &'static str);

#[rustfmt::skip]
const TABLE2: &[&[Row2]] = &[
    &[
        (&[12], "t^4+t^3-8t^2-36t-11", "t^4+9/2t^3+27/4t^2+35/8t+17/16"),
        (&[5, 16], "", "t^4-9/2t^3+27/4t^2-35/8t+17/16"),
        (&[3, 6], "", "t^8+1/4t^6-3/16t^4+3/64t^2-1/256"),
        (&[8, 9], "", ""),
    ],
    &[
        (&[7, 17], "t^6-11t^4-32t^2-256", "t^6+3/4t^4+2t^2-1/2"),
        (&[11, 19], "", ""),
    ],
    &[
        (&[4, 18], "t^5+t^4+t^3-30t^2-96t-91", "t^10+2t^8+t^6-1/64t^4+3/256t^2-1/1024"),
        (&[10, 14], "", ""),
    ],
    &[
        (&[20, 41], "t^5-2t^4-4t^3-31t^2+23t-41", "t^10+t^8+157/32t^6+145/128t^4+1681/512t^2-2209/2048"),
        (&[31, 36], "", ""),
    ],
    &[
        (&[21, 33], "t^5+2t^4-7t^3-46t^2-116t-131", "t^10+3/2t^8+13/16t^6+5/64t^4+3/256t^2-1/1024"),
        (&[28, 37], "", ""),
    ],
    &[
        (&[23], "t^3+t^2-18t-43", "t^3+t^2+3/4t+1/8"),
        (&[24, 38], "", "t^3-t^2+3/4t-1/8"),
        (&[25, 26], "", "t^6-t^4+7/16t^2-5/64"),
        (&[35, 39], "", ""),
    ],
    &[
        (&[27, 32], "t^6-20t^4-16t^2-48", "t^6+2t^4+5/2t^2-3/4"),
        (&[29, 34], "", ""),
    ],
    &[
        (&[30], "t-5", "t-1/4"),
        (&[40, 42], "", "t+1/4"),
    ],
    &[
        (&[43, 49], "t^6+2t^5-18t^4-67t^3-108t^2-40t-19", "t^12+11/4t^10+107/16t^8+145/32t^6+455/128t^4-2859/1024t^2+1521/4096"),
        (&[45, 48], "", ""),
    ],
    &[
        (&[44, 50], "t^7+3t^6-18t^5-127t^4-328t^3-560t^2-704t-448", "t^14+23/4t^12+25/2t^10+971/64t^8+421/32t^6+307/64t^4+107/64t^2-49/256"),
        (&[47, 51], "", ""),
    ],
    &[
        (&[52], "t^4-7t^3+10t^2-24t+37", "t^4+1/2t^3+55/4t^2+19/8t+1/16"),
        (&[46, 53], "", "t^4-1/2t^3+55/4t^2-19/8t+1/16"),
    ],
    &[
        (&[54], "t^3-5t^2-10t-11", "t^3+11/4t-7/8"),
        (&[55, 56], "", "t^3+11/4t+7/8"),
    ],
];

fn parse_table_poly(text: &str) -> IntPoly {
    parse_int_poly(text, "t").expect("fixture polynomial parses")
}

fn label(members: &[u32]) -> String {
    match members {
        [one] => one.to_string(),
        _ => format!(
            "({})",
            members
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ),
    }
}

pub fn poly_rows() -> &'static [PolyRow] {
    static ROWS: OnceLock<Vec<PolyRow>> = OnceLock::new();
    ROWS.get_or_init(|| {
        let mut out = Vec::new();
        for block in TABLE2 {
            let (mut rho, mut c) = ("", "");
            for &(members, r, cc) in block.iter() {
                if !r.is_empty() {
                    rho = r;
                }
                if !cc.is_empty() {
                    c = cc;
                }
                out.push(PolyRow {
                    label: label(members),
                    members: members.to_vec(),
                    mu_rho_text: rho.to_string(),
                    mu_c_text: c.to_string(),
                    mu_rho: parse_table_poly(rho),
                    mu_c: parse_table_poly(c),
                });
            }
        }
        out
    })
}

/// All 51 rows in table order.
pub fn fixtures() -> &'static [Fixture] {
    static ALL: OnceLock<Vec<Fixture>> = OnceLock::new();
    ALL.get_or_init(|| {
        TABLE1
            .iter()
            .map(|&(number, periodic, seq, rho, alpha)| {
                let row = poly_rows()
                    .iter()
                    .find(|r| r.members.contains(&number))
                    .expect("every tag has a polynomial row");
                Fixture {
                    tag: if periodic {
                        format!("{number}*")
                    } else {
                        number.to_string()
                    },
                    number,
                    periodic,
                    sequence: seq.iter().map(|&v| BigInt::from(v)).collect(),
                    rho_decimal: rho.to_string(),
                    alpha_decimal: alpha.to_string(),
                    group: row.label.clone(),
                    mu_rho_text: row.mu_rho_text.clone(),
                    mu_c_text: row.mu_c_text.clone(),
                    mu_rho: row.mu_rho.clone(),
                    mu_c: row.mu_c.clone(),
                }
            })
            .collect()
    })
}

/// Fixture by row tag (`"23"`, `"7*"` or `"7"`).
pub fn fixture(tag: &str) -> Option<&'static Fixture> {
    let t = tag.trim().trim_end_matches('*');
    fixtures().iter().find(|f| f.number.to_string() == t)
}
