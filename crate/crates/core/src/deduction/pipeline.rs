use super::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Run NP/CNP-annotation (step 3).
    pub np_deduction: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { np_deduction: true }
    }
}

/// Result of the deduction pipeline: the causal patterns in creation order
/// and a log of every derivation, skip, and annotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deduction {
    pub patterns: Vec<AnnotatedPattern>,
    pub log: Vec<String>,
}

impl Deduction {
    pub fn pattern(&self, name: &str) -> Option<&AnnotatedPattern> {
        self.patterns.iter().find(|a| a.name() == name)
    }
}

fn admit(list: &[AnnotatedPattern], d: &AnnotatedPattern, log: &mut Vec<String>) -> bool {
    if is_tautology(&d.pattern) {
        log.push(format!(
            "skip {}: tautology (precondition is the whole positive graph)",
            d.name()
        ));
        return false;
    }
    if let Some(e) = list.iter().find(|e| equivalent(&e.pattern, &d.pattern)) {
        log.push(format!("skip {}: already exists as {}", d.name(), e.name()));
        return false;
    }
    log.push(format!("derive {} from {}", d.name(), d.provenance.join(" + ")));
    true
}

/// PW; S/C-annotation of distinct initial patterns; NP/CNP-annotation of
/// every positive pattern with every N-pattern; N-deduction; dependency
/// inheritance in creation order.
pub fn run_deduction_pipeline(s: &Specification, opts: PipelineOptions) -> Result<Deduction, DeductionError> {
    s.validate()?;
    let (s1, mut log) = pw_logged(s);
    let negatives: Vec<&Pattern> = s1.patterns.iter().filter(|p| p.kind == PatternKind::N).collect();
    let mut list: Vec<AnnotatedPattern> = s1
        .patterns
        .iter()
        .filter(|p| p.kind != PatternKind::N)
        .cloned()
        .map(AnnotatedPattern::new)
        .collect();
    let initial = list.len();

    for i in 0..initial {
        for j in i + 1..initial {
            let out = s_annotate(&list[i], &list[j])?;
            let mut out = out.into_iter();
            list[i] = out.next().unwrap();
            list[j] = out.next().unwrap();
            for d in out {
                for dep in &list[i].deps {
                    if dep.name == d.name() {
                        log.push(format!("dep {} on {}", dep.name, list[i].name()));
                    }
                }
                for dep in &list[j].deps {
                    if dep.name == d.name() {
                        log.push(format!("dep {} on {}", dep.name, list[j].name()));
                    }
                }
                if admit(&list, &d, &mut log) {
                    list.push(d);
                }
            }
        }
    }

    if opts.np_deduction {
        let positives = list.len();
        for i in 0..positives {
            for n in &negatives {
                let out = np_annotate(&list[i], &AnnotatedPattern::new((*n).clone()))?;
                let mut out = out.into_iter();
                let before = list[i].deps.len();
                list[i] = out.next().unwrap();
                if let Some(d) = out.next() {
                    if list[i].deps.len() > before {
                        log.push(format!("dep {} on {}", d.name(), list[i].name()));
                    }
                    if admit(&list, &d, &mut log) {
                        list.push(d);
                    }
                }
            }
        }
    } else {
        log.push("NP-deduction disabled".into());
    }

    for a in list.iter_mut() {
        for n in &negatives {
            let p = n_deduce(&a.pattern, n)?;
            for c in &p.neg_post[a.pattern.neg_post.len()..] {
                log.push(format!("N-deduction: {} gains postcondition {}", a.name(), c.name));
            }
            a.pattern = p;
        }
    }

    for k in 0..list.len() {
        let legs = list[k].legs.clone();
        for (parent, leg) in legs {
            let Some(pi) = list.iter().position(|a| a.name() == parent) else {
                continue;
            };
            let deps = list[pi].deps.clone();
            for dep in deps {
                let img = list[k]
                    .pattern
                    .positive
                    .sub(&dep.graph.ids().iter().filter_map(|x| leg.get(x).cloned()).collect());
                if dep_within(&img, &list[k].pattern.pos_pre) {
                    continue;
                }
                let name = list[k].name().to_string();
                if list[k].add_dep(&dep.name, img) {
                    log.push(format!("inherit dep {} from {} into {}", dep.name, parent, name));
                }
            }
        }
    }
    Ok(Deduction { patterns: list, log })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn class2rel_yields_ten_patterns() {
        let d = run_deduction_pipeline(&fixtures::class2rel(), PipelineOptions::default()).unwrap();
        let names: Vec<&str> = d.patterns.iter().map(|a| a.name()).collect();
        assert_eq!(
            names,
            [
                "C-T",
                "A-Co",
                "A-Co2",
                "C-T.A-Co",
                "C-T.A-Co2[1]",
                "C-T.A-Co2[2]",
                "A-Co.A-Co2[1]",
                "A-Co.A-Co2[2]",
                "A-Co2.notDupF",
                "A-Co.A-Co2[2].notDupF",
            ],
            "{}",
            d.log.join("\n")
        );
    }

    #[test]
    fn empty_spec_gives_nothing() {
        let s = Specification::new(fixtures::class2rel_metamodel());
        assert!(run_deduction_pipeline(&s, PipelineOptions::default())
            .unwrap()
            .patterns
            .is_empty());
    }

    #[test]
    fn pipeline_is_deterministic() {
        let a = run_deduction_pipeline(&fixtures::class2rel(), PipelineOptions::default()).unwrap();
        let b = run_deduction_pipeline(&fixtures::class2rel(), PipelineOptions::default()).unwrap();
        assert_eq!(a, b);
    }
}
