//! Line format for difference-set instances:
//! `group=<factors>; set=<coords>;<coords>;…`.

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};

use super::GroupRingElement;

pub fn parse_instance(line: &str) -> Result<GroupRingElement> {
    let bad = || Error::Parse(format!("expected \"group=<factors>; set=<elements>\", got {line:?}"));
    let rest = line.trim().strip_prefix("group=").ok_or_else(bad)?;
    let (factors, set) = rest.split_once(';').ok_or_else(bad)?;
    let set = set.trim_start().strip_prefix("set=").ok_or_else(bad)?;
    let group = AbelianGroup::parse(factors)?;
    let elements = set
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(GroupElement::parse)
        .collect::<Result<Vec<_>>>()?;
    GroupRingElement::from_subset(&group, &elements)
}

/// All non-blank, non-`#` lines of a file body.
pub fn parse_instances(text: &str) -> Result<Vec<GroupRingElement>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_instance)
        .collect()
}

pub fn format_instance(d: &GroupRingElement) -> String {
    let set: Vec<String> = d.support_elements().iter().map(|g| g.to_string()).collect();
    format!("group={}; set={}", d.group(), set.join(";"))
}
