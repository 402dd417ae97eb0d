//! Browser front end. Each export takes text input and returns a JSON
//! document that `www/app.js` renders as permutation diagrams and tables.

use serde::Serialize;
use wilfcheck::bijection::{phi, phi_inverse};
use wilfcheck::enumerate::{self, CountOptions, CountReport};
use wilfcheck::pattern;
use wilfcheck::perm::{maximal_permutation, minimal_permutation};
use wilfcheck::{Class, Permutation};

#[cfg(target_arch = "wasm32")]
use wasm_bindgen::prelude::*;

/// Largest size the page will enumerate; anything above stalls a tab.
pub const BROWSER_MAX_N: usize = 9;
/// Longest permutation the page accepts for diagrams.
pub const MAX_DIAGRAM_LEN: usize = 40;

#[derive(Serialize, Debug)]
pub struct Membership {
    pub class: &'static str,
    pub member: bool,
    /// 1-based positions of a disqualifying occurrence.
    pub witness: Option<Vec<usize>>,
}

#[derive(Serialize, Debug)]
pub struct Analysis {
    pub values: Vec<u32>,
    pub positions: Vec<usize>,
    pub maxima: Vec<u32>,
    pub spec: String,
    pub minimal: Vec<u32>,
    pub maximal: Vec<u32>,
    pub classes: Vec<Membership>,
}

#[derive(Serialize, Debug)]
pub struct Mapping {
    pub input: Vec<u32>,
    pub output: Vec<u32>,
    pub positions: Vec<usize>,
    pub inverse: bool,
}

fn parse(text: &str) -> Result<Permutation, String> {
    let p: Permutation = text.parse().map_err(|e| format!("{e}"))?;
    if p.len() > MAX_DIAGRAM_LEN {
        return Err(format!("at most {MAX_DIAGRAM_LEN} entries, got {}", p.len()));
    }
    Ok(p)
}

pub fn analyze(text: &str) -> Result<Analysis, String> {
    let p = parse(text)?;
    let spec = p.lrmax_spec();
    let fill = |r: wilfcheck::Result<Permutation>| r.map(Permutation::into_values).map_err(|e| e.to_string());
    Ok(Analysis {
        minimal: fill(minimal_permutation(&spec))?,
        maximal: fill(maximal_permutation(&spec))?,
        spec: spec.to_string(),
        classes: Class::ALL
            .into_iter()
            .map(|c| {
                let member = c.contains(&p);
                Membership {
                    class: c.name(),
                    member,
                    witness: if member {
                        None
                    } else {
                        c.witness(&p).map(|w| w.indices().to_vec())
                    },
                }
            })
            .collect(),
        positions: spec.positions,
        maxima: spec.maxima,
        values: p.into_values(),
    })
}

/// Applies the Wilf bijection (or its inverse).
pub fn wilf_map(text: &str, inverse: bool) -> Result<Mapping, String> {
    let p = parse(text)?;
    let image = if inverse { phi_inverse(&p) } else { phi(&p) }.map_err(|e| e.to_string())?;
    Ok(Mapping {
        positions: p.lrmax_spec().positions,
        input: p.into_values(),
        output: image.into_values(),
        inverse,
    })
}

pub fn find_occurrences(pattern_text: &str, text: &str, limit: usize) -> Result<Vec<Vec<usize>>, String> {
    let pat = pattern::parse_pattern(pattern_text).map_err(|e| e.to_string())?;
    let p = parse(text)?;
    Ok(pattern::occurrences(&p, &pat, Some(limit))
        .into_iter()
        .map(|o| o.indices().to_vec())
        .collect())
}

pub fn count_rows(n_max: usize) -> Result<Vec<CountReport>, String> {
    let opts = CountOptions {
        use_fast: true,
        jobs: 1,
        max_n: BROWSER_MAX_N,
    };
    enumerate::count_table(n_max, &opts).map_err(|e| e.to_string())
}

/// Serializes a successful result; errors pass through as their message.
pub fn to_json<T: Serialize>(r: Result<T, String>) -> Result<String, String> {
    r.map(|v| serde_json::to_string(&v).expect("plain data serializes"))
}

#[cfg(target_arch = "wasm32")]
#[wasm_bindgen(js_name = analyze)]
pub fn analyze_js(text: &str) -> Result<String, JsError> {
    to_json(analyze(text)).map_err(|e| JsError::new(&e))
}

#[cfg(target_arch = "wasm32")]
#[wasm_bindgen(js_name = wilfMap)]
pub fn wilf_map_js(text: &str, inverse: bool) -> Result<String, JsError> {
    to_json(wilf_map(text, inverse)).map_err(|e| JsError::new(&e))
}

#[cfg(target_arch = "wasm32")]
#[wasm_bindgen(js_name = occurrences)]
pub fn occurrences_js(pattern_text: &str, text: &str, limit: usize) -> Result<String, JsError> {
    to_json(find_occurrences(pattern_text, text, limit)).map_err(|e| JsError::new(&e))
}

#[cfg(target_arch = "wasm32")]
#[wasm_bindgen(js_name = countRows)]
pub fn count_rows_js(n_max: usize) -> Result<String, JsError> {
    to_json(count_rows(n_max)).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analysis_of_worked_example() {
        let a = analyze("3,1,5,4,2,7,6").unwrap();
        assert_eq!(a.positions, vec![1, 3, 6]);
        assert_eq!(a.maxima, vec![3, 5, 7]);
        assert_eq!(a.minimal, vec![3, 1, 5, 2, 4, 7, 6]);
        assert_eq!(a.maximal, vec![3, 2, 5, 4, 1, 7, 6]);
        assert_eq!(a.spec, "P=1,3,6;M=3,5,7;n=7");
        let json = to_json(Ok(a)).unwrap();
        assert!(
            json.contains(r#""class":"avoids321","member":false,"witness":[3,4,5]"#),
            "{json}"
        );
    }

    #[test]
    fn witness_for_non_member() {
        let a = analyze("3,2,4,1").unwrap();
        let sat = &a.classes[0];
        assert_eq!((sat.class, sat.member), ("satisfying", false));
        assert_eq!(sat.witness, Some(vec![1, 2, 3, 4]));
    }

    #[test]
    fn mapping() {
        let m = wilf_map("3,1,4,2", false).unwrap();
        assert_eq!(m.output, vec![3, 2, 4, 1]);
        assert_eq!(m.positions, vec![1, 3]);
        assert_eq!(wilf_map("3,2,4,1", true).unwrap().output, vec![3, 1, 4, 2]);
        assert!(wilf_map("3,2,4,1", false).unwrap_err().contains("(1,2,3,4)"));
    }

    #[test]
    fn occurrences_and_counts() {
        assert_eq!(
            find_occurrences("3-1-4-2", "3,5,1,4,2", 10).unwrap(),
            vec![vec![1, 3, 4, 5]]
        );
        assert!(find_occurrences("31-4-2", "3,5,1,4,2", 10).unwrap().is_empty());
        assert!(find_occurrences("3-3", "1", 10).is_err());
        let rows = count_rows(5).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.satisfying_count).collect::<Vec<_>>(),
            [1, 1, 2, 6, 23, 104]
        );
        assert!(count_rows(BROWSER_MAX_N + 1).is_err());
    }

    #[test]
    fn input_errors() {
        assert!(analyze("1,2,2").unwrap_err().contains("index 3"));
        let long: Vec<String> = (1..=MAX_DIAGRAM_LEN + 1).map(|v| v.to_string()).collect();
        assert!(analyze(&long.join(",")).is_err());
    }
}
