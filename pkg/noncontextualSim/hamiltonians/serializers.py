from rest_framework import serializers
import math

from core.exceptions import PauliParseError
from pauli.services import parse_pauli


class CoefficientField(serializers.FloatField):
    """A finite real coefficient; strings and booleans are not numbers here"""

    def to_internal_value(self, data):
        if isinstance(data, bool) or not isinstance(data, (int, float)):
            raise serializers.ValidationError(f'Coefficient must be a number, got {type(data).__name__}')
        try:
            value = float(data)
        except (OverflowError, ValueError, TypeError):
            self.fail('invalid')
        if not math.isfinite(value):
            raise serializers.ValidationError('Coefficient must be finite')
        return value

    def to_representation(self, value):
        return float(value)


class HamiltonianSerializer(serializers.Serializer):
    """Validate a Pauli-label to coefficient map"""
    terms = serializers.DictField(child=CoefficientField(), allow_empty=True)

    def validate_terms(self, value):
        """All labels parse and share one length"""
        lengths = set()
        for label in value:
            try:
                parse_pauli(label)
            except PauliParseError as exc:
                raise serializers.ValidationError(str(exc))
            lengths.add(len(label))
        if len(lengths) > 1:
            raise serializers.ValidationError(
                f'Pauli labels have inconsistent lengths {sorted(lengths)}'
            )
        return value
