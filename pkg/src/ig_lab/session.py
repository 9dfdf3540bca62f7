"""One biorder, one caps setting, everything cached: the working context.

IgContext wires the layers together: the word engine, the D-class models
(with their finiteness errors), the partial actions, the contact automata
needed by whatever fingerprints show up, and the chain-level decision
procedures.  All state is memoisation; results are pure in (biorder, caps).
"""

from __future__ import annotations

from .biorder import BiorderedSet
from .config import Caps, DEFAULT_CAPS
from .errors import GroupNotFiniteWithinCap
from .gain import ContactAutomaton, build_contact
from .rees import (PartialActionTable, RegularDClassModel, build_dclass_model, coordinatize,
                   ig_element, partial_actions, triple_to_word)
from .theta import (CensusReport, SchutzDescriptor, ThetaEnv, TripleChain, dclass_census,
                    green, ig_equal, schutzenberger)
from .words import EqualityVerdict, WordEngine


class IgContext:
    def __init__(self, bi: BiorderedSet, caps: Caps = DEFAULT_CAPS):
        self.biorder = bi
        self.caps = caps
        self.engine = WordEngine(bi, caps)
        self._models: dict[int, RegularDClassModel] = {}
        self._model_errors: dict[int, GroupNotFiniteWithinCap] = {}
        self._actions: PartialActionTable | None = None
        self._automata: dict[tuple, ContactAutomaton] = {}
        self._chains: dict[tuple, TripleChain] = {}

    # -- models ---------------------------------------------------------------

    def model(self, dclass_id: int) -> RegularDClassModel:
        if dclass_id in self._model_errors:
            raise self._model_errors[dclass_id]
        if dclass_id not in self._models:
            try:
                self._models[dclass_id] = build_dclass_model(self.biorder, dclass_id, self.caps, self.engine)
            except GroupNotFiniteWithinCap as exc:
                self._model_errors[dclass_id] = exc
                raise
        return self._models[dclass_id]

    def all_models(self):
        """(models, errors) over every D-class of the biorder."""
        for d in range(len(self.biorder.d_classes)):
            try:
                self.model(d)
            except GroupNotFiniteWithinCap:
                pass
        return dict(self._models), dict(self._model_errors)

    def actions(self) -> PartialActionTable:
        if self._actions is None:
            models, errors = self.all_models()
            if errors:
                bad = ", ".join(str(d) for d in sorted(errors))
                raise GroupNotFiniteWithinCap(
                    f"cannot compute partial actions: D-classes {bad} have no finite model", self.caps)
            self._actions = partial_actions(self.biorder, models, self.caps, self.engine)
        return self._actions

    def automaton(self, d1: int, d2: int) -> ContactAutomaton:
        if (d1, d2) not in self._automata:
            acts = self.actions()
            self._automata[(d1, d2)] = build_contact(
                self.model(d1), self.model(d2), acts, max_group_order=self.caps.max_group_order)
        return self._automata[(d1, d2)]

    def env(self) -> ThetaEnv:
        """A ThetaEnv materialising every automaton on demand."""
        ctx = self

        class _LazyAutomata(dict):
            def __missing__(self, key):
                auto = ctx.automaton(*key)
                self[key] = auto
                return auto

        models, _ = self.all_models()
        return ThetaEnv(models, _LazyAutomata())

    # -- words and chains -------------------------------------------------------

    def word(self, labels) -> tuple:
        return self.biorder.word_from_labels(labels)

    def element(self, word) -> TripleChain:
        w = self.engine.check_word(word)
        if w not in self._chains:
            models, _ = self.all_models()
            self._chains[w] = ig_element(self.biorder, w, models, self.caps, self.engine)
        return self._chains[w]

    def oracle(self, u, v) -> EqualityVerdict:
        return self.engine.oracle_equal(u, v)

    def equal(self, u, v):
        """Chain-level equality of two words, with certificate."""
        return ig_equal(self.element(u), self.element(v), self.env())

    def green(self, u, v, rel: str, *, dual: bool = False) -> bool:
        return green(self.element(u), self.element(v), rel, self.env(), dual=dual)

    def schutzenberger(self, word) -> SchutzDescriptor:
        return schutzenberger(self.element(word), self.env())

    def census(self, word) -> CensusReport:
        return dclass_census(self.element(word), self.env())

    def triple_word(self, dclass_id: int, triple) -> tuple:
        return triple_to_word(self.model(dclass_id), triple, self.engine)

    def coordinatize(self, dclass_id: int, word) -> tuple:
        return coordinatize(self.biorder, self.model(dclass_id), word, self.engine)
