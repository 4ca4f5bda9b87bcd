//! Certified step sequences and their formal reversals.

use std::sync::Arc;

use crate::calculus::step::{apply_steps, TietzeStep};
use crate::core::presentation::Presentation;
use crate::error::{Error, Result};

/// A validated sequence of steps from `start` to `end`. Construction
/// replays eagerly; traces are never trusted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TietzeTrace {
    start: Arc<Presentation>,
    steps: Vec<TietzeStep>,
    end: Presentation,
}

impl TietzeTrace {
    pub fn new(start: Arc<Presentation>, steps: Vec<TietzeStep>) -> Result<Self> {
        let states = apply_steps(&start, &steps)?;
        let end = states.into_iter().last().expect("at least the start");
        Ok(TietzeTrace { start, steps, end })
    }

    pub fn start(&self) -> &Presentation {
        &self.start
    }

    pub fn steps(&self) -> &[TietzeStep] {
        &self.steps
    }

    pub fn end(&self) -> &Presentation {
        &self.end
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-replays from the start, returning every intermediate presentation
    /// (`start` first, `end` last).
    pub fn intermediates(&self) -> Result<Vec<Presentation>> {
        apply_steps(&self.start, &self.steps)
    }

    /// Replays and checks the stored end; the replay invariant.
    pub fn revalidate(&self) -> Result<()> {
        let states = self.intermediates()?;
        if states.last() != Some(&self.end) {
            return Err(Error::BadStep("trace replay does not reach its end".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentDirection {
    Forward,
    Backward,
}

/// A zig-zag: segments of transformations read forward or backward. A
/// backward segment's trace runs from the later endpoint to the earlier
/// one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TietzeZigzag {
    start: Presentation,
    segments: Vec<(SegmentDirection, TietzeTrace)>,
    end: Presentation,
}

impl TietzeZigzag {
    pub fn new(
        start: Presentation,
        segments: Vec<(SegmentDirection, TietzeTrace)>,
    ) -> Result<Self> {
        let mut current = start.clone();
        for (dir, trace) in &segments {
            match dir {
                SegmentDirection::Forward => {
                    if trace.start() != &current {
                        return Err(Error::BadStep(
                            "forward segment does not start at the current endpoint".into(),
                        ));
                    }
                    current = trace.end().clone();
                }
                SegmentDirection::Backward => {
                    if trace.end() != &current {
                        return Err(Error::BadStep(
                            "backward segment does not reach the current endpoint".into(),
                        ));
                    }
                    current = trace.start().clone();
                }
            }
        }
        Ok(TietzeZigzag {
            start,
            segments,
            end: current,
        })
    }

    pub fn empty(p: Presentation) -> Self {
        TietzeZigzag {
            start: p.clone(),
            segments: Vec::new(),
            end: p,
        }
    }

    pub fn start(&self) -> &Presentation {
        &self.start
    }

    pub fn end(&self) -> &Presentation {
        &self.end
    }

    pub fn segments(&self) -> &[(SegmentDirection, TietzeTrace)] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// The same zig-zag read from the other end.
    pub fn reversed(&self) -> TietzeZigzag {
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|(dir, trace)| {
                let flipped = match dir {
                    SegmentDirection::Forward => SegmentDirection::Backward,
                    SegmentDirection::Backward => SegmentDirection::Forward,
                };
                (flipped, trace.clone())
            })
            .collect();
        TietzeZigzag {
            start: self.end.clone(),
            segments,
            end: self.start.clone(),
        }
    }

    /// Revalidates every segment and the endpoint chain.
    pub fn revalidate(&self) -> Result<()> {
        for (_, trace) in &self.segments {
            trace.revalidate()?;
        }
        let rebuilt = TietzeZigzag::new(self.start.clone(), self.segments.clone())?;
        if rebuilt.end != self.end {
            return Err(Error::BadStep("zig-zag endpoints do not chain".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::word::Word;

    #[test]
    fn trace_replay_produces_intermediates() {
        let p = Arc::new(Presentation::build(&["a"], &[], true).unwrap());
        let steps = vec![TietzeStep::Tgen {
            word: Word::empty(),
            fresh: "b".into(),
        }];
        let trace = TietzeTrace::new(p.clone(), steps).unwrap();
        let mids = trace.intermediates().unwrap();
        assert_eq!(mids.len(), 2);
        assert_eq!(&mids[0], &*p);
        assert_eq!(mids[1].gen_count(), 2);
        trace.revalidate().unwrap();
    }

    #[test]
    fn zigzag_endpoints_must_chain() {
        let p = Arc::new(Presentation::build(&["a"], &[], true).unwrap());
        let q = Arc::new(Presentation::build(&["x"], &[], true).unwrap());
        let t = TietzeTrace::new(
            p.clone(),
            vec![TietzeStep::Tgen {
                word: Word::empty(),
                fresh: "b".into(),
            }],
        )
        .unwrap();
        assert!(TietzeZigzag::new((*p).clone(), vec![(SegmentDirection::Forward, t.clone())]).is_ok());
        assert!(
            TietzeZigzag::new((*q).clone(), vec![(SegmentDirection::Forward, t.clone())]).is_err()
        );
        // Backward segments run from the later endpoint to the earlier.
        let z = TietzeZigzag::new(t.end().clone(), vec![(SegmentDirection::Backward, t)]).unwrap();
        assert_eq!(z.end().gen_count(), 1);
        let r = z.reversed();
        r.revalidate().unwrap();
        assert_eq!(r.start().gen_count(), 1);
    }
}
