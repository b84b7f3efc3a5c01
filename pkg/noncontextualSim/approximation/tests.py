from django.test import SimpleTestCase, override_settings

from approximation.services import (
    ORDER_MAGNITUDE, ORDER_TABLE, approximation_report, brute_force_noncontextual, candidate_order,
    diagonal_ground_energy, diagonal_subset, greedy_noncontextual, table_rows, within_published,
)
from core.exceptions import ContractViolationError, SizeLimitError
from hamiltonians.services import load_fixture, load_hamiltonian
from oracle.services import ground_energy
from solver.services import solve_hamiltonian
from structure.services import is_noncontextual


class CandidateOrderTest(SimpleTestCase):

    def setUp(self):
        with self.assertLogs('hamiltonians.services', level='WARNING'):
            self.h = load_hamiltonian('{"XX": 0.0, "ZZ": 1.0, "IZ": -2.0, "ZI": 1.0}')

    def test_magnitude(self):
        """Decreasing |coefficient|, ties by label"""
        self.assertEqual([t.label for t in candidate_order(self.h)], ['IZ', 'ZI', 'ZZ', 'XX'])

    def test_table(self):
        """Input order with zero coefficients last"""
        self.assertEqual([t.label for t in candidate_order(self.h, ORDER_TABLE)], ['ZZ', 'IZ', 'ZI', 'XX'])

    def test_unknown(self):
        with self.assertRaises(ContractViolationError):
            candidate_order(self.h, 'random')


class GreedyTest(SimpleTestCase):
    """Greedy noncontextual sub-Hamiltonians"""

    def test_heh_keeps_diagonal_and_xx(self):
        kept = greedy_noncontextual(load_fixture('heh+_full'))
        self.assertEqual(kept.as_mapping(), load_fixture('heh+_noncon').as_mapping())

    def test_hempel(self):
        kept = greedy_noncontextual(load_fixture('lih_hempel_full'))
        self.assertEqual(kept.term_count, 9)
        self.assertTrue({'XXI', 'YYI'} <= set(kept.labels()))
        self.assertEqual(sum(1 for op in kept.ops if op.x == 0), 6)
        self.assertEqual(kept.as_mapping(), load_fixture('lih_hempel_noncon').as_mapping())

    def test_kandala_matches_published_subset(self):
        kept = greedy_noncontextual(load_fixture('lih_kandala_full'))
        self.assertEqual(kept.as_mapping(), load_fixture('lih_kandala_noncon').as_mapping())

    def test_result_is_noncontextual(self):
        for system in ('heh+', 'lih_hempel', 'lih_kandala', 'beh2'):
            for batch in (1, 2):
                kept = greedy_noncontextual(load_fixture(f'{system}_full'), batch=batch)
                self.assertTrue(is_noncontextual(kept.ops), msg=f'{system} k={batch}')

    def test_window_of_one_is_one_by_one(self):
        """Keeping a term iff the kept set stays noncontextual"""
        for system in ('heh+', 'lih_hempel'):
            h = load_fixture(f'{system}_full')
            kept_ops, kept_labels = [], []
            for term in candidate_order(h):
                if is_noncontextual(kept_ops + [term.op]):
                    kept_ops.append(term.op)
                    kept_labels.append(term.label)
            self.assertEqual(greedy_noncontextual(h, batch=1).as_mapping(), h.subset(kept_labels).as_mapping())

    def test_noncontextual_input_unchanged(self):
        for system in ('heh+', 'lih_hempel', 'lih_kandala', 'beh2'):
            h = load_fixture(f'{system}_noncon')
            self.assertEqual(greedy_noncontextual(h).as_mapping(), h.as_mapping(), msg=system)

    def test_workers_do_not_change_windows(self):
        h = load_fixture('lih_hempel_full')
        self.assertEqual(
            greedy_noncontextual(h, batch=3, workers=1).as_mapping(),
            greedy_noncontextual(h, batch=3, workers=3).as_mapping(),
        )

    def test_batch_must_be_positive(self):
        with self.assertRaises(ContractViolationError):
            greedy_noncontextual(load_fixture('heh+_full'), batch=0)


class DiagonalTest(SimpleTestCase):

    def test_subset_and_energy(self):
        h = load_fixture('heh+_full')
        diagonal = diagonal_subset(h)
        self.assertEqual(diagonal.labels(), ['IZ', 'ZI', 'ZZ'])
        self.assertEqual(diagonal.identity_offset, h.identity_offset)
        self.assertAlmostEqual(diagonal_ground_energy(diagonal), ground_energy(diagonal), delta=1e-12)
        self.assertAlmostEqual(diagonal_ground_energy(diagonal), -2.174105, places=5)

    def test_off_diagonal_rejected(self):
        with self.assertRaises(ContractViolationError):
            diagonal_ground_energy(load_fixture('heh+_noncon'))

    def test_qubit_cap(self):
        """The cap follows its own setting, not the solver threshold"""
        diagonal = diagonal_subset(load_fixture('heh+_full'))
        with override_settings(NCSIM_DIAGONAL_MAX_QUBITS=1, NCSIM_EXHAUSTIVE_THRESHOLD=22):
            with self.assertRaises(SizeLimitError):
                diagonal_ground_energy(diagonal)
        with override_settings(NCSIM_DIAGONAL_MAX_QUBITS=2, NCSIM_EXHAUSTIVE_THRESHOLD=1):
            self.assertAlmostEqual(diagonal_ground_energy(diagonal), -2.174105, places=5)
        with self.assertRaises(SizeLimitError):
            diagonal_ground_energy(diagonal, max_qubits=1)

    def test_offset_only(self):
        self.assertEqual(diagonal_ground_energy(load_hamiltonian('{"II": 0.25}')), 0.25)


class BruteForceTest(SimpleTestCase):

    def test_heh_no_worse_than_greedy(self):
        h = load_fixture('heh+_full')
        full = ground_energy(h)
        best = brute_force_noncontextual(h)
        greedy = greedy_noncontextual(h)
        self.assertTrue(is_noncontextual(best.ops))
        best_error = abs(solve_hamiltonian(best).result.energy - full)
        greedy_error = abs(solve_hamiltonian(greedy).result.energy - full)
        self.assertLessEqual(best_error, greedy_error + 1e-12)

    def test_size_limit(self):
        with self.assertRaises(SizeLimitError):
            brute_force_noncontextual(load_fixture('heh+_full'), max_terms=3)


class ReportTest(SimpleTestCase):
    """Sizes and errors against the published table"""

    def test_heh_report(self):
        report = approximation_report(load_fixture('heh+_full'))
        self.assertEqual(report.sizes, (9, 5, 3))
        self.assertAlmostEqual(report.full_ground, -2.1806338514, places=7)
        self.assertAlmostEqual(report.noncon_ground, -2.1802929038, places=7)
        self.assertAlmostEqual(report.eps_noncon, 0.213, places=2)
        self.assertAlmostEqual(report.eps_diag, 4.081, places=2)
        self.assertEqual(report.method, 'greedy')

    def test_chem_accuracy_scales_errors(self):
        h = load_fixture('heh+_full')
        base = approximation_report(h)
        doubled = approximation_report(h, chem_accuracy=2 * base.chem_accuracy)
        self.assertAlmostEqual(doubled.eps_noncon, base.eps_noncon / 2, places=12)
        with self.assertRaises(ContractViolationError):
            approximation_report(h, chem_accuracy=0.0)

    def test_table_rows(self):
        """Every bundled system reproduces |S_full|, |S_noncon|, |R| and both errors"""
        for row in table_rows():
            published = row['published']
            self.assertEqual(
                row['report'].sizes,
                (published['full_terms'], published['noncon_terms'], published['generators']),
                msg=row['system'],
            )
            self.assertTrue(row['eps_noncon_match'], msg=f"{row['system']} {row['report'].eps_noncon}")
            self.assertTrue(row['eps_diag_match'], msg=f"{row['system']} {row['report'].eps_diag}")

    def test_within_published(self):
        self.assertTrue(within_published(0.213, 0.21))
        self.assertTrue(within_published(156.1, 156))
        self.assertFalse(within_published(19.95, 4.2))
        self.assertFalse(within_published(0.3, 0.21))

    def test_brute_force_report(self):
        report = approximation_report(load_fixture('heh+_full'), brute_force=True)
        self.assertEqual(report.method, 'brute-force')
        self.assertLessEqual(report.eps_noncon, 0.213 + 1e-3)
        self.assertEqual(report.full_terms, 9)

    def test_orders_agree_on_published_systems(self):
        for system in ('heh+', 'lih_kandala'):
            h = load_fixture(f'{system}_full')
            self.assertEqual(
                greedy_noncontextual(h, order=ORDER_MAGNITUDE).as_mapping(),
                greedy_noncontextual(h, order=ORDER_TABLE).as_mapping(),
                msg=system,
            )
