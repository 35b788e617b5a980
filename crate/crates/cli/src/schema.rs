//! Structural validation of input documents. No numerics happen here.

use std::collections::BTreeSet;

use onemotive::report::{Report, Status};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocKind {
    /// `{"r", "t", "g", "omega", "eta", "u_lift"}`.
    OneMotive,
    /// `{"components", "points", "gluings", "deleted"}`.
    CurveConfig,
    /// `{"curve": curve_config, "divisor": [{"component", "coord", "multiplicity"}]}`.
    AbelJacobi,
    /// A motive, a list of motives, or `{"motives": [...], "iso_pairs": [[i, j], ...]}`.
    Check,
}

impl DocKind {
    fn name(self) -> &'static str {
        match self {
            DocKind::OneMotive => "one_motive",
            DocKind::CurveConfig => "curve_config",
            DocKind::AbelJacobi => "aj_input",
            DocKind::Check => "check_input",
        }
    }
}

struct Checker {
    rep: Report,
}

impl Checker {
    fn bad(&mut self, field: &str, msg: impl Into<String>) {
        self.rep.push(field, Status::Fail, msg);
    }

    fn field<'a>(&mut self, obj: &'a Value, path: &str, key: &str) -> Option<&'a Value> {
        let v = obj.get(key);
        if v.is_none() {
            self.bad(&join(path, key), "missing");
        }
        v
    }

    fn count(&mut self, obj: &Value, path: &str, key: &str) -> Option<usize> {
        let v = self.field(obj, path, key)?;
        match v.as_u64() {
            Some(n) if n <= 64 => Some(n as usize),
            Some(n) => {
                self.bad(&join(path, key), format!("{n} is too large"));
                None
            }
            None => {
                self.bad(&join(path, key), "must be a non-negative integer");
                None
            }
        }
    }

    fn complex(&mut self, v: &Value, path: &str) -> bool {
        let ok = matches!(v.as_array(), Some(a) if a.len() == 2 && a.iter().all(|x| x.as_f64().is_some_and(f64::is_finite)));
        if !ok {
            self.bad(path, "complex numbers are [re, im] pairs of finite numbers");
        }
        ok
    }

    fn complex_matrix(&mut self, v: &Value, path: &str, rows: usize, cols: usize) {
        let Some(rs) = v.as_array() else {
            self.bad(path, "must be an array of rows");
            return;
        };
        if rs.len() != rows {
            self.bad(path, format!("expected {rows} rows, found {}", rs.len()));
            return;
        }
        for (i, row) in rs.iter().enumerate() {
            let rp = format!("{path}[{i}]");
            match row.as_array() {
                Some(cs) if cs.len() == cols => {
                    for (j, z) in cs.iter().enumerate() {
                        if !self.complex(z, &format!("{rp}[{j}]")) {
                            return;
                        }
                    }
                }
                Some(cs) => {
                    self.bad(&rp, format!("expected {cols} entries, found {}", cs.len()));
                    return;
                }
                None => {
                    self.bad(&rp, "must be an array");
                    return;
                }
            }
        }
    }

    fn string<'a>(&mut self, obj: &'a Value, path: &str, key: &str) -> Option<&'a str> {
        let v = self.field(obj, path, key)?;
        let s = v.as_str();
        if s.is_none() {
            self.bad(&join(path, key), "must be a string");
        }
        s
    }

    fn one_motive(&mut self, doc: &Value, path: &str) {
        if !doc.is_object() {
            self.bad(if path.is_empty() { "document" } else { path }, "one_motive must be an object");
            return;
        }
        let (r, t, g) = (self.count(doc, path, "r"), self.count(doc, path, "t"), self.count(doc, path, "g"));
        if let Some(g) = g {
            if let Some(v) = self.field(doc, path, "omega") {
                self.complex_matrix(v, &join(path, "omega"), g, g);
            }
            if let (Some(t), Some(v)) = (t, self.field(doc, path, "eta")) {
                self.complex_matrix(v, &join(path, "eta"), t, 2 * g);
            }
            if let (Some(t), Some(r), Some(v)) = (t, r, self.field(doc, path, "u_lift")) {
                self.complex_matrix(v, &join(path, "u_lift"), t + g, r);
            }
        }
    }

    fn coord(&mut self, v: &Value, path: &str) {
        if v.as_str() == Some("inf") {
            return;
        }
        if v.is_string() {
            self.bad(path, "the only string coordinate is \"inf\"");
            return;
        }
        self.complex(v, path);
    }

    fn label_list(&mut self, v: &Value, path: &str) -> Vec<String> {
        let Some(a) = v.as_array() else {
            self.bad(path, "must be an array of labels");
            return Vec::new();
        };
        let mut out = Vec::new();
        for (i, l) in a.iter().enumerate() {
            match l.as_str() {
                Some(s) => out.push(s.to_string()),
                None => self.bad(&format!("{path}[{i}]"), "labels are strings"),
            }
        }
        out
    }

    fn curve(&mut self, doc: &Value, path: &str) {
        if !doc.is_object() {
            self.bad(if path.is_empty() { "document" } else { path }, "curve_config must be an object");
            return;
        }
        let mut elliptic = BTreeSet::new();
        let mut comps = BTreeSet::new();
        match self.field(doc, path, "components").map(|v| (v, v.as_array())) {
            Some((_, Some(cs))) => {
                for (i, c) in cs.iter().enumerate() {
                    let cp = format!("{}[{i}]", join(path, "components"));
                    let Some(label) = self.string(c, &cp, "label") else { continue };
                    if !comps.insert(label.to_string()) {
                        self.bad(&join(&cp, "label"), format!("duplicate component label {label}"));
                    }
                    match self.count(c, &cp, "genus") {
                        Some(0) => {
                            if c.get("tau").is_some_and(|t| !t.is_null()) {
                                self.bad(&join(&cp, "tau"), "genus 0 components have no tau");
                            }
                        }
                        Some(1) => {
                            elliptic.insert(label.to_string());
                            if let Some(tau) = self.field(c, &cp, "tau") {
                                let tp = join(&cp, "tau");
                                if self.complex(tau, &tp) && !(tau[1].as_f64().unwrap_or(0.0) > 0.0) {
                                    self.bad(&tp, "tau must lie in the upper half plane");
                                }
                            }
                        }
                        Some(k) => self.bad(&join(&cp, "genus"), format!("genus {k}; only 0 and 1 are supported")),
                        None => {}
                    }
                }
            }
            Some(_) => self.bad(&join(path, "components"), "must be an array"),
            None => {}
        }
        let mut labels = BTreeSet::new();
        match self.field(doc, path, "points").map(|v| v.as_array()) {
            Some(Some(ps)) => {
                for (i, p) in ps.iter().enumerate() {
                    let pp = format!("{}[{i}]", join(path, "points"));
                    if let Some(label) = self.string(p, &pp, "label") {
                        if !labels.insert(label.to_string()) || comps.contains(label) {
                            self.bad(&join(&pp, "label"), format!("duplicate label {label}"));
                        }
                    }
                    if let Some(comp) = self.string(p, &pp, "component") {
                        if !comps.contains(comp) {
                            self.bad(&join(&pp, "component"), format!("unknown component {comp}"));
                        }
                        if let Some(c) = self.field(p, &pp, "coord") {
                            self.coord(c, &join(&pp, "coord"));
                            if elliptic.contains(comp) && c.is_string() {
                                self.bad(&join(&pp, "coord"), "points on elliptic components need finite coordinates");
                            }
                        }
                    }
                }
            }
            Some(None) => self.bad(&join(path, "points"), "must be an array"),
            None => {}
        }
        let mut glued = BTreeSet::new();
        if let Some(gs) = doc.get("gluings") {
            let gp = join(path, "gluings");
            match gs.as_array() {
                Some(classes) => {
                    for (i, class) in classes.iter().enumerate() {
                        let cp = format!("{gp}[{i}]");
                        let ls = self.label_list(class, &cp);
                        if ls.len() < 2 && class.is_array() {
                            self.bad(&cp, "identification classes need at least two points");
                        }
                        for l in ls {
                            if !labels.contains(&l) {
                                self.bad(&cp, format!("unknown point {l}"));
                            }
                            glued.insert(l);
                        }
                    }
                }
                None => self.bad(&gp, "must be an array of label arrays"),
            }
        }
        if let Some(ds) = doc.get("deleted") {
            let dp = join(path, "deleted");
            for l in self.label_list(ds, &dp) {
                if !labels.contains(&l) {
                    self.bad(&dp, format!("unknown point {l}"));
                }
                if glued.contains(&l) {
                    self.bad(&dp, format!("point {l} is both glued and deleted"));
                }
            }
        }
    }

    fn divisor(&mut self, doc: &Value, path: &str) {
        let Some(terms) = doc.as_array() else {
            self.bad(path, "must be an array of terms");
            return;
        };
        for (i, t) in terms.iter().enumerate() {
            let tp = format!("{path}[{i}]");
            self.string(t, &tp, "component");
            if let Some(c) = self.field(t, &tp, "coord") {
                self.coord(c, &join(&tp, "coord"));
            }
            if let Some(m) = self.field(t, &tp, "multiplicity") {
                if m.as_i64().is_none() {
                    self.bad(&join(&tp, "multiplicity"), "must be an integer");
                }
            }
        }
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

/// Structural report for a document of the given kind: one failing finding per problem, named by field path.
pub fn schema_validate(doc: &Value, kind: DocKind) -> Report {
    let mut ck = Checker { rep: Report::new(&format!("schema:{}", kind.name())) };
    match kind {
        DocKind::OneMotive => ck.one_motive(doc, ""),
        DocKind::CurveConfig => ck.curve(doc, ""),
        DocKind::AbelJacobi => {
            if let Some(c) = ck.field(doc, "", "curve") {
                ck.curve(c, "curve");
            }
            if let Some(d) = ck.field(doc, "", "divisor") {
                ck.divisor(d, "divisor");
            }
        }
        DocKind::Check => match (doc.as_array(), doc.get("motives")) {
            (Some(list), _) => list.iter().enumerate().for_each(|(i, m)| ck.one_motive(m, &format!("[{i}]"))),
            (None, Some(Value::Array(list))) => {
                list.iter().enumerate().for_each(|(i, m)| ck.one_motive(m, &format!("motives[{i}]")));
                if let Some(pairs) = doc.get("iso_pairs") {
                    let ok = pairs.as_array().is_some_and(|ps| {
                        ps.iter().all(|p| {
                            p.as_array().is_some_and(|ij| {
                                ij.len() == 2 && ij.iter().all(|k| k.as_u64().is_some_and(|k| (k as usize) < list.len()))
                            })
                        })
                    });
                    if !ok {
                        ck.bad("iso_pairs", "pairs [i, j] of indices into motives");
                    }
                }
            }
            (None, Some(_)) => ck.bad("motives", "must be an array"),
            (None, None) => ck.one_motive(doc, ""),
        },
    }
    if ck.rep.details.is_empty() {
        ck.rep.push("document", Status::Pass, "well formed");
    }
    ck.rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn kummer_doc() -> Value {
        json!({"r": 1, "t": 1, "g": 0, "omega": [], "eta": [[]], "u_lift": [[[0.69, 0.0]]]})
    }

    #[test]
    fn valid_motive_passes() {
        assert!(schema_validate(&kummer_doc(), DocKind::OneMotive).passed());
    }

    #[test]
    fn missing_omega_is_named() {
        let mut d = kummer_doc();
        d.as_object_mut().unwrap().remove("omega");
        let rep = schema_validate(&d, DocKind::OneMotive);
        assert!(!rep.passed());
        assert!(rep.finding("omega").is_some());
    }

    #[test]
    fn eta_row_count_is_checked() {
        let mut d = kummer_doc();
        d["eta"] = json!([[], []]);
        let rep = schema_validate(&d, DocKind::OneMotive);
        assert_eq!(rep.finding("eta").map(|f| f.status), Some(Status::Fail));
    }

    #[test]
    fn glued_and_deleted_overlap() {
        let d = json!({
            "components": [{"label": "X", "genus": 0}],
            "points": [{"label": "a", "component": "X", "coord": [0.0, 0.0]},
                       {"label": "b", "component": "X", "coord": "inf"}],
            "gluings": [["a", "b"]],
            "deleted": ["a"]
        });
        let rep = schema_validate(&d, DocKind::CurveConfig);
        assert!(!rep.passed());
        assert!(rep.finding("deleted").is_some());
    }
}
