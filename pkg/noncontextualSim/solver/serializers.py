from rest_framework import serializers
import math


class WitnessSerializer(serializers.Serializer):
    """
    Witness file: generator labels to ±1 and representative labels to r_i

    This is the shape ``solve --witness-out`` writes.
    """
    q = serializers.DictField(child=serializers.IntegerField(), allow_empty=True)
    r = serializers.DictField(child=serializers.FloatField(), allow_empty=True)

    def validate_q(self, value):
        bad = [label for label, entry in value.items() if entry not in (1, -1)]
        if bad:
            raise serializers.ValidationError(f"q values must be +1 or -1 (labels {bad})")
        return value

    def validate_r(self, value):
        if any(not math.isfinite(entry) for entry in value.values()):
            raise serializers.ValidationError("r values must be finite")
        return value


class GroundResultSerializer(serializers.Serializer):
    """Energy, witness maps and search statistics of a solve"""
    energy = serializers.FloatField(source='result.energy')
    method = serializers.CharField(source='result.method')
    exact = serializers.BooleanField(source='result.is_exact')
    q_evaluations = serializers.IntegerField(source='result.q_evaluations')
    generators = serializers.IntegerField(source='generator_set.generator_count')
    cliques = serializers.IntegerField(source='generator_set.clique_count')
    witness = serializers.SerializerMethodField()

    def get_witness(self, obj):
        q, r = obj.witness_maps()
        return {'q': q, 'r': r}
