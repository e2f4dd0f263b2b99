use serde::{Deserialize, Serialize};

use crate::model::AspectClass;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternationRow {
    pub lv_lemma: String,
    pub variant_lemma: String,
    pub aspect: AspectClass,
}

/// Global light verb / aspectual verb alternations, consulted when an entry
/// has no variant of its own for a verb.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternationTable {
    rows: Vec<AlternationRow>,
}

const DEFAULT_ROWS: &[(&str, &str, AspectClass)] = {
    use AspectClass::*;
    &[
        // English
        ("have", "take", Inchoative),
        ("have", "gain", Inchoative),
        ("have", "keep", Durative),
        ("have", "lose", Terminative),
        ("have", "regain", Resumptive),
        ("make", "start", Inchoative),
        ("undergo", "fall", Inchoative),
        // French, transitive light verbs
        ("avoir", "prendre", Inchoative),
        ("avoir", "garder", Durative),
        ("avoir", "conserver", Durative),
        ("avoir", "perdre", Terminative),
        ("avoir", "retrouver", Resumptive),
        ("avoir", "abandonner", Terminative),
        ("avoir", "multiplier", Iterative),
        ("faire", "entamer", Inchoative),
        ("faire", "multiplier", Iterative),
        ("subir", "tomber", Inchoative),
        // French, copula
        ("être", "tomber", Inchoative),
        ("être", "entrer", Inchoative),
        ("être", "sortir", Terminative),
        ("être", "rester", Durative),
        ("être", "demeurer", Durative),
        ("être", "retrouver", Resumptive),
    ]
};

impl Default for AlternationTable {
    fn default() -> Self {
        let rows = DEFAULT_ROWS
            .iter()
            .map(|&(lv, variant, aspect)| AlternationRow {
                lv_lemma: lv.to_string(),
                variant_lemma: variant.to_string(),
                aspect,
            })
            .collect();
        AlternationTable::new(rows).expect("default alternation table has no duplicates")
    }
}

impl AlternationTable {
    /// Fails with the offending pair if a (light verb, variant) pair repeats.
    pub fn new(rows: Vec<AlternationRow>) -> Result<Self, (String, String)> {
        for (i, r) in rows.iter().enumerate() {
            if rows[..i]
                .iter()
                .any(|p| p.lv_lemma == r.lv_lemma && p.variant_lemma == r.variant_lemma)
            {
                return Err((r.lv_lemma.clone(), r.variant_lemma.clone()));
            }
        }
        Ok(AlternationTable { rows })
    }

    pub fn lookup(&self, lv: &str, variant: &str) -> Option<AspectClass> {
        self.rows
            .iter()
            .find(|r| r.lv_lemma == lv && r.variant_lemma == variant)
            .map(|r| r.aspect)
    }

    pub fn rows(&self) -> &[AlternationRow] {
        &self.rows
    }
}
