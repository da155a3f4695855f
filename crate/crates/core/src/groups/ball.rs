//! Word-metric balls with respect to the fixed symmetric generating sets.

use std::collections::{HashMap, HashSet};

use super::element::Element;
use super::family::Family;
use crate::error::{Error, Result};

/// Default limit on the number of elements a ball may hold.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// All elements of word length at most `radius`, sorted by
/// `(word length, serialization order)`. This is the scan order used by
/// every exhaustive check.
#[derive(Clone, Debug)]
pub struct Ball {
    family: Family,
    radius: u32,
    elements: Vec<Element>,
    lengths: HashMap<Element, u32>,
    /// `sphere_ends[r]` = number of elements of length at most `r`.
    sphere_ends: Vec<usize>,
    cap: usize,
}

impl Ball {
    pub fn generate(family: Family, radius: u32) -> Result<Ball> {
        Ball::generate_with_cap(family, radius, DEFAULT_ELEMENT_CAP)
    }

    pub fn generate_with_cap(family: Family, radius: u32, cap: usize) -> Result<Ball> {
        family.validate()?;
        let id = family.identity();
        let mut ball = Ball {
            family,
            radius: 0,
            elements: vec![id.clone()],
            lengths: HashMap::from([(id, 0)]),
            sphere_ends: vec![1],
            cap,
        };
        ball.extend_to(radius)?;
        Ok(ball)
    }

    /// Grows the ball sphere by sphere up to `radius`.
    pub fn extend_to(&mut self, radius: u32) -> Result<()> {
        let gens = self.family.symmetric_generators();
        while self.radius < radius {
            let start = if self.radius == 0 {
                0
            } else {
                self.sphere_ends[self.radius as usize - 1]
            };
            let last = &self.elements[start..];
            let mut fresh: HashSet<Element> = HashSet::new();
            for g in last {
                for s in &gens {
                    let h = g.mul(s);
                    if !self.lengths.contains_key(&h) {
                        fresh.insert(h);
                    }
                }
            }
            let next = self.radius + 1;
            if self.elements.len() + fresh.len() > self.cap {
                return Err(Error::ResourceCap {
                    cap: self.cap,
                    radius: next,
                });
            }
            let mut sphere: Vec<Element> = fresh.into_iter().collect();
            sphere.sort();
            for h in &sphere {
                self.lengths.insert(h.clone(), next);
            }
            self.elements.extend(sphere);
            self.sphere_ends.push(self.elements.len());
            self.radius = next;
        }
        Ok(())
    }

    /// Element limit for later calls to [`Ball::extend_to`]. A failed
    /// extension leaves the ball at its last complete radius.
    pub fn set_cap(&mut self, cap: usize) {
        self.cap = cap;
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Prefix of the scan order: the sub-ball of the given radius.
    pub fn within(&self, radius: u32) -> &[Element] {
        let r = radius.min(self.radius) as usize;
        &self.elements[..self.sphere_ends[r]]
    }

    /// Elements of length exactly `radius`.
    pub fn sphere(&self, radius: u32) -> &[Element] {
        if radius > self.radius {
            return &[];
        }
        let end = self.sphere_ends[radius as usize];
        let start = if radius == 0 {
            0
        } else {
            self.sphere_ends[radius as usize - 1]
        };
        &self.elements[start..end]
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.lengths.contains_key(g)
    }

    /// Word length, if at most the radius.
    pub fn word_length(&self, g: &Element) -> Option<u32> {
        self.lengths.get(g).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.elements.iter()
    }
}

/// Generates the ball of radius `radius` for the family.
pub fn generate_ball(family: Family, radius: u32) -> Result<Ball> {
    Ball::generate(family, radius)
}
