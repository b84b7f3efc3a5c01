from rest_framework import serializers


class ApproximationReportSerializer(serializers.Serializer):
    full_ground = serializers.FloatField()
    noncon_ground = serializers.FloatField()
    diag_ground = serializers.FloatField()
    eps_noncon = serializers.FloatField()
    eps_diag = serializers.FloatField()
    full_terms = serializers.IntegerField()
    noncon_terms = serializers.IntegerField()
    generators = serializers.IntegerField()
    chem_accuracy = serializers.FloatField()
    method = serializers.CharField()
    kept_terms = serializers.ListField(child=serializers.CharField())


class PublishedRowSerializer(serializers.Serializer):
    full_terms = serializers.IntegerField()
    noncon_terms = serializers.IntegerField()
    generators = serializers.IntegerField()
    eps_noncon = serializers.FloatField()
    eps_diag = serializers.FloatField()


class TableRowSerializer(serializers.Serializer):
    """One system of the report: computed, published and whether they agree"""
    system = serializers.CharField()
    qubits = serializers.IntegerField()
    computed = ApproximationReportSerializer(source='report')
    published = PublishedRowSerializer()
    sizes_match = serializers.BooleanField()
    eps_noncon_match = serializers.BooleanField()
    eps_diag_match = serializers.BooleanField()
